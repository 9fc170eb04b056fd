# -*- coding: utf-8 -*-
import os

import yaml


def fixture_data():
    with open(os.path.join(os.path.dirname(__file__), "fixtures.yaml")) as fid:
        return yaml.safe_load(fid)


def write_values(path, values, header=None):
    """Write a one-column data file and return its path as a string."""
    with open(str(path), "w") as fid:
        if header:
            fid.write(header + "\n")
        for value in values:
            fid.write("%r\n" % value)
    return str(path)


def write_paired(path, control, treatment, labels=("control", "treatment")):
    with open(str(path), "w") as fid:
        fid.write("group,value\n")
        for value in control:
            fid.write("%s,%r\n" % (labels[0], value))
        for value in treatment:
            fid.write("%s,%r\n" % (labels[1], value))
    return str(path)
