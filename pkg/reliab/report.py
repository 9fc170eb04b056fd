# -*- coding: utf-8 -*-
import csv
import io
import json
import logging
import math

import numpy as np

from rich import box
from rich.console import Console
from rich.table import Table

from . import __version__
from .exceptions import ConfigurationError


log = logging.getLogger(__name__)

OUTPUT_FORMATS = ("table", "json", "csv")


def plain(obj):
    """Recursively turn result objects and numpy scalars into JSON types."""
    if hasattr(obj, "json") and callable(obj.json):
        obj = obj.json()
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def _cell(value):
    if value is None:
        return "n/a"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return "%.6g" % value
    return str(value)


class Report(dict):
    """
    Output of one CLI command.

    :param str command: Command name
    :param dict results: Structured results
    :param list table: Rows of the main table (dicts sharing ``columns``)
    :param list columns: Column order of the main table
    :param dict metadata: Seed, resolved configuration, ...
    :param list warnings: Human readable warnings

    A report serialises to JSON and back without loss:

    .. code-block:: python

        Report.from_json(report.to_json()) == report
    """

    def __init__(
        self,
        command,
        results=None,
        table=None,
        columns=None,
        metadata=None,
        warnings=None,
        version=__version__,
        title=None,
    ):
        table = plain(table or [])
        if columns is None:
            columns = list(table[0]) if table else []
        dict.__init__(
            self,
            command=command,
            version=version,
            title=title or command,
            metadata=plain(metadata or {}),
            results=plain(results or {}),
            columns=list(columns),
            table=table,
            warnings=list(warnings or []),
        )

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(
            data["command"],
            results=data.get("results"),
            table=data.get("table"),
            columns=data.get("columns"),
            metadata=data.get("metadata"),
            warnings=data.get("warnings"),
            version=data.get("version", __version__),
            title=data.get("title"),
        )

    @property
    def command(self):
        return self["command"]

    @property
    def results(self):
        return self["results"]

    @property
    def table(self):
        return self["table"]

    @property
    def warnings(self):
        return self["warnings"]

    def json(self):
        return dict(self)

    def to_json(self):
        return json.dumps(self.json(), indent=2, sort_keys=True)

    def to_csv(self):
        """The main table only; warnings go to the log."""
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf, fieldnames=self["columns"], extrasaction="ignore", lineterminator="\n"
        )
        writer.writeheader()
        for row in self["table"]:
            writer.writerow({k: "" if row.get(k) is None else row.get(k) for k in self["columns"]})
        return buf.getvalue()

    def to_rich(self):
        table = Table(title=self["title"], title_style="bold", box=box.ROUNDED, expand=False)
        for column in self["columns"]:
            table.add_column(column, justify="right", no_wrap=True)
        for row in self["table"]:
            table.add_row(*[_cell(row.get(column)) for column in self["columns"]])
        return table

    def render(self, format="table", console=None):
        """
        Render to ``console`` (stdout by default).

        :param str format: ``table``, ``json`` or ``csv``
        """
        if format not in OUTPUT_FORMATS:
            raise ConfigurationError(
                "Unknown output format %r (use %s)" % (format, ", ".join(OUTPUT_FORMATS))
            )
        if format in ("json", "csv"):
            text = self.to_json() + "\n" if format == "json" else self.to_csv()
            if console is None:
                import click

                click.echo(text, nl=False)
            else:
                console.out(text, end="", highlight=False)
            return
        console = console or Console(soft_wrap=True)
        console.print(self.to_rich())
        meta = self["metadata"]
        if meta.get("seed") is not None:
            console.print("seed: %s" % meta["seed"], style="dim", highlight=False)
        for key, value in sorted(self["results"].items()):
            if not isinstance(value, (dict, list)):
                console.print("%s: %s" % (key, _cell(value)), highlight=False)
