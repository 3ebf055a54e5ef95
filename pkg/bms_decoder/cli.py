import json
import logging
import os
import sys

import django
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError

from .bms import TraceRecord
from .order import format_points, point, total_order
from .poly import parse_polynomial

logger = logging.getLogger(__name__)

TABLE = "table"
STRUCTURED = "structured"
FORMATS = (TABLE, STRUCTURED)

TABLE_HEADER = "l→ F G Delta"


class RunConfig(object):
    """
    Options of one command run. Exactly one input source is allowed: an
    error polynomial, a syndrome file, or a received word with its code.
    """

    SOURCES = ("error", "syndromes", "word")

    def __init__(self, field=None, period=None, order="lex", t=None, tau=None, source=None,
                 source_kind=None, fmt=TABLE, trace=False, out=None, code=None):
        self.field = field
        self.period = period
        self.order = total_order(order)
        self.t = t
        self.tau = tau
        self.source = source
        self.source_kind = source_kind
        self.fmt = fmt
        self.trace = trace
        self.out = out
        self.code = code

    def validate(self):
        problems = []
        if self.source_kind not in RunConfig.SOURCES or self.source is None:
            problems.append("exactly one input source is required")
        if self.fmt not in FORMATS:
            problems.append("unknown format %s" % self.fmt)
        if self.t is not None and self.t < 1:
            problems.append("t must be positive")
        period = self.period or (self.code.period if self.code is not None else None)
        if self.t is not None and period is not None and any(self.t > r // 2 for r in period):
            problems.append("t=%s exceeds half of the period %s" % (self.t, tuple(period)))
        return problems


def parse_pair(text):
    try:
        first, second = (int(x) for x in str(text).split(","))
    except ValueError:
        raise CommandError("expected a pair i,j, got %r" % text, returncode=1)
    return point((first, second))


def _record_row(record, order):
    return "%s→ {%s} {%s} %s" % (
        record.l,
        ",".join(f.format(order) for f in record.F),
        ",".join(g.format(order) for g in record.G),
        format_points(record.delta))


def emit_trace(trace, fmt=TABLE, order="lex"):
    order = total_order(order)
    if fmt == STRUCTURED:
        return json.dumps([{
            "l": [record.l[0], record.l[1]],
            "F": [f.format(order) for f in record.F],
            "G": [g.format(order) for g in record.G],
            "delta": [[p[0], p[1]] for p in record.delta],
            "failing": [[p[0], p[1]] for p in record.failing],
        } for record in trace], indent=2)
    lines = [TABLE_HEADER]
    previous = None
    for record in trace:
        if record.same_as(previous):
            lines.append("%s→ Same" % (record.l,))
        else:
            lines.append(_record_row(record, order))
        previous = record
    return "\n".join(lines)


def parse_trace(text, field):
    return [
        TraceRecord(
            point(row["l"]),
            tuple(parse_polynomial(field, f) for f in row["F"]),
            tuple(parse_polynomial(field, g) for g in row["G"]),
            tuple(point(p) for p in row["delta"]),
            tuple(point(p) for p in row.get("failing", [])))
        for row in json.loads(text)]


def emit_basis(basis, delta, order, fmt=TABLE, condition_met=True):
    order = total_order(order)
    if fmt == STRUCTURED:
        return json.dumps({
            "basis": [f.format(order) for f in basis],
            "delta": [[p[0], p[1]] for p in sorted(delta.members)],
            "condition_met": condition_met,
        }, indent=2)
    lines = ["Basis: {%s}" % ",".join(f.format(order) for f in basis), "Delta: %s" % format_points(delta)]
    if not condition_met:
        lines.append("Warning: %s-condition does not hold" % order.condition)
    return "\n".join(lines)


def cmd_dispatch(argv, stdout=None, stderr=None):
    """Run the bmsa command; returns 0, 1 on configuration errors, 2 on decoding failures."""
    if not settings.configured and not os.environ.get("DJANGO_SETTINGS_MODULE"):
        settings.configure(INSTALLED_APPS=["bms_decoder"], BMS_DECODER={})
    django.setup()
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        call_command("bmsa", *argv, stdout=stdout, stderr=stderr)
    except CommandError as exc:
        stderr.write("%s\n" % exc)
        return getattr(exc, "returncode", 1)
    return 0


def main():
    sys.exit(cmd_dispatch(sys.argv[1:]))
