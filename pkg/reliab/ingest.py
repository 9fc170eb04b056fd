# -*- coding: utf-8 -*-
import csv
import logging
import math
import os

import numpy as np

from reliabbase.moments import GroupSummary

from .exceptions import ConfigurationError, IngestionError


log = logging.getLogger(__name__)

FORMATS = ("auto", "values", "paired")

# label pairs recognised as (control, treatment), in that order
GROUP_LABELS = (
    ("control", "treatment"),
    ("x", "y"),
    ("a", "b"),
    ("0", "1"),
)


class IngestedDataset(dict):
    """
    Observations of one group read from a file.

    :param values: Finite observations (at least two)
    :param str source: Where they came from (``path`` or ``path[label]``)
    """

    def __init__(self, values, source):
        values = np.asarray(values, dtype=float).ravel()
        if values.size < 2:
            raise IngestionError(
                "need at least 2 observations, got %d" % values.size, path=source
            )
        dict.__init__(self, values=values, source=str(source), count=int(values.size))

    @property
    def values(self):
        return self["values"]

    @property
    def source(self):
        return self["source"]

    @property
    def count(self):
        return self["count"]

    def summary(self):
        return GroupSummary.from_values(self["values"])

    def json(self):
        return {"source": self.source, "count": self.count}


def _number(text, path, line):
    try:
        value = float(text)
    except ValueError:
        raise IngestionError("not a number: %r" % text, path=path, line=line)
    if not math.isfinite(value):
        raise IngestionError("value is not finite: %r" % text, path=path, line=line)
    return value


def _rows(path):
    """Yield ``(line_number, fields)`` for non-blank, non-comment rows."""
    if not os.path.isfile(path):
        raise IngestionError("no such file", path=path)
    try:
        with open(path, newline="") as fid:
            for number, fields in enumerate(csv.reader(fid), start=1):
                fields = [f.strip() for f in fields]
                if not any(fields) or fields[0].startswith("#"):
                    continue
                yield number, fields
    except (OSError, UnicodeDecodeError, csv.Error) as e:
        raise IngestionError("cannot read file: %s" % e, path=path)


def _is_header(fields):
    try:
        float(fields[-1])
    except ValueError:
        return True
    return False


def _sniff(path):
    for _, fields in _rows(path):
        return "paired" if len(fields) >= 2 else "values"
    raise IngestionError("file is empty", path=path)


def _read_values(path):
    values = []
    first = True
    for line, fields in _rows(path):
        if first and _is_header(fields):
            first = False
            continue
        first = False
        if len(fields) != 1:
            raise IngestionError(
                "expected one value per line, got %d fields" % len(fields),
                path=path,
                line=line,
            )
        values.append(_number(fields[0], path, line))
    if not values:
        raise IngestionError("no observations after parsing", path=path)
    return IngestedDataset(values, path)


def _order_labels(labels):
    lowered = {label.lower(): label for label in labels}
    for control, treatment in GROUP_LABELS:
        if set(lowered) == {control, treatment}:
            return lowered[control], lowered[treatment]
    return labels[0], labels[1]


def _read_paired(path):
    groups = {}
    order = []
    first = True
    for line, fields in _rows(path):
        if first and _is_header(fields):
            first = False
            continue
        first = False
        if len(fields) != 2:
            raise IngestionError(
                "expected 'group,value', got %d fields" % len(fields),
                path=path,
                line=line,
            )
        label, text = fields
        if label not in groups:
            if len(order) == 2:
                raise IngestionError(
                    "more than two groups (%s)" % ", ".join(order + [label]),
                    path=path,
                    line=line,
                )
            groups[label] = []
            order.append(label)
        groups[label].append(_number(text, path, line))
    if not groups:
        raise IngestionError("no observations after parsing", path=path)
    if len(order) != 2:
        raise IngestionError("expected two groups, found %d" % len(order), path=path)
    control, treatment = _order_labels(order)
    log.debug("Paired file %s: control=%r treatment=%r" % (path, control, treatment))
    return (
        IngestedDataset(groups[control], "%s[%s]" % (path, control)),
        IngestedDataset(groups[treatment], "%s[%s]" % (path, treatment)),
    )


def ingest(path, format="auto"):
    """
    Read observations from a CSV file.

    * ``values``: one number per line, optional header
    * ``paired``: ``group,value`` rows for exactly two groups; labels
      ``control/treatment`` (or ``x/y``, ``a/b``, ``0/1``) are ordered
      accordingly, otherwise the first label seen is the control
    * ``auto``: ``paired`` if the first row has two fields

    Blank lines and lines starting with ``#`` are skipped.

    :returns: an :class:`IngestedDataset`, or a ``(control, treatment)``
        pair for paired files
    :raises reliab.exceptions.IngestionError: with the offending line
    """
    if format not in FORMATS:
        raise ConfigurationError(
            "Unknown input format %r (use %s)" % (format, ", ".join(FORMATS))
        )
    path = str(path)
    if format == "auto":
        format = _sniff(path)
    if format == "paired":
        return _read_paired(path)
    return _read_values(path)
