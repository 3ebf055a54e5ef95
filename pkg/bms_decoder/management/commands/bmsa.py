import json

from django.core.management.base import BaseCommand, CommandError

from bms_decoder.apps import BmsDecoderConfig
from bms_decoder.cli import (
    FORMATS, STRUCTURED, RunConfig, emit_basis, emit_trace, parse_pair,
)
from bms_decoder.locator import dump_syndromes
from bms_decoder.order import TotalOrder
from bms_decoder.services import (
    BmsService, BmsSubmit, DecodeService, DecodeSubmit, OracleService, OracleSubmit,
    SelfTestService, ServiceError, SyndromeService, SyndromeSubmit, load_code, load_field,
    load_syndrome_file, load_word,
)


def _add_common(parser, field=True, period=True):
    if field:
        parser.add_argument("--field", help="JSON file {p, m, poly}")
    if period:
        parser.add_argument("--period", type=parse_pair, help="r1,r2")
    parser.add_argument("--order", choices=TotalOrder.KINDS)
    parser.add_argument("--t", type=int)
    parser.add_argument("--tau", type=parse_pair, help="i,j")
    parser.add_argument("--in", dest="input", help="input file")
    parser.add_argument("--out", help="write the result to this file")
    parser.add_argument("--trace", action="store_true")
    parser.add_argument("--format", dest="fmt", choices=FORMATS)


class Command(BaseCommand):
    help = "Syndromes, BMS runs, abelian-code decoding and oracle checks over S(t)."

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="subcommand", required=True)

        syndrome = subparsers.add_parser("syndrome", help="syndrome file of an error polynomial")
        _add_common(syndrome)
        syndrome.add_argument("--error", help="error polynomial, e.g. X1^2+X1*X2")

        bms = subparsers.add_parser("bms", help="run the algorithm on a syndrome file")
        _add_common(bms)
        bms.add_argument("--normalize-steps", action="store_true")
        bms.add_argument("--q", type=int, default=2)

        decode = subparsers.add_parser("decode", help="decode a received word")
        _add_common(decode, field=False, period=False)
        decode.add_argument("--code", help="JSON file {r1, r2, q, field, orbits}")
        decode.add_argument("--normalize-steps", action="store_true")

        oracle = subparsers.add_parser("oracle", help="brute-force cross checks")
        _add_common(oracle)
        oracle.add_argument("--trials", type=int)
        oracle.add_argument("--seed", type=int)
        oracle.add_argument("--q", type=int, default=2)
        oracle.add_argument("--uniqueness", action="store_true")

        subparsers.add_parser("selftest", help="replay the golden examples")

    def _require(self, options, *names):
        missing = ["--%s" % name.replace("_", "-") for name in names if options.get(name) is None]
        if missing:
            raise CommandError("missing %s" % ", ".join(missing), returncode=1)

    def _config(self, options, source_kind, source, code=None):
        config = RunConfig(
            field=None,
            period=options.get("period"),
            order=options.get("order") or BmsDecoderConfig.default_order or "lex",
            t=options.get("t"),
            tau=options.get("tau"),
            source=source,
            source_kind=source_kind,
            fmt=options.get("fmt") or BmsDecoderConfig.default_format or "table",
            trace=options.get("trace", False),
            out=options.get("out"),
            code=code)
        problems = config.validate()
        if problems:
            raise CommandError("; ".join(problems), returncode=1)
        return config

    def _emit(self, config, text):
        if config.out:
            with open(config.out, "w") as f:
                f.write(text + "\n")
        else:
            self.stdout.write(text)

    def handle(self, *args, **options):
        handler = getattr(self, "handle_%s" % options["subcommand"])
        try:
            handler(options)
        except ServiceError as exc:
            raise CommandError(str(exc), returncode=exc.code)

    def handle_syndrome(self, options):
        self._require(options, "field", "period", "t", "tau")
        source = options.get("error")
        if source is None and options.get("input"):
            with open(options["input"]) as f:
                source = f.read().strip()
        config = self._config(options, "error", source)
        field = load_field(options["field"])
        values = SyndromeService().submit(SyndromeSubmit(field, config.t, config.tau, source, config.period))
        self._emit(config, dump_syndromes(values, config.tau))

    def handle_bms(self, options):
        self._require(options, "field", "t", "input")
        config = self._config(options, "syndromes", options["input"])
        field = load_field(options["field"])
        tau, values = load_syndrome_file(options["input"], field)
        result, verdict = BmsService().submit(BmsSubmit(
            field, values, config.t, config.order, period=config.period, tau=tau,
            normalize_steps=options.get("normalize_steps", False), q=options.get("q")))
        if config.fmt == STRUCTURED:
            payload = json.loads(emit_basis(result.basis, result.delta, config.order, STRUCTURED, result.condition_met))
            if config.trace:
                payload["trace"] = json.loads(emit_trace(result.trace, STRUCTURED, config.order))
            if verdict is not None:
                payload["error"] = str(verdict.candidate) if verdict.ok else None
            text = json.dumps(payload, indent=2)
        else:
            parts = []
            if config.trace:
                parts.append(emit_trace(result.trace, config.fmt, config.order))
            parts.append(emit_basis(result.basis, result.delta, config.order, config.fmt, result.condition_met))
            if verdict is not None:
                parts.append("Error: %s" % verdict.candidate if verdict.ok else "Error: not determined (%s)" % verdict.reason)
            text = "\n".join(parts)
        self._emit(config, text)

    def handle_decode(self, options):
        self._require(options, "code", "input", "t")
        code = load_code(options["code"])
        config = self._config(options, "word", options["input"], code=code)
        received = load_word(options["input"], code)
        result = DecodeService().submit(DecodeSubmit(
            code, received, config.t, config.order, tau=config.tau,
            normalize_steps=options.get("normalize_steps", False)))
        if config.fmt == STRUCTURED:
            payload = {
                "error": result.error.format(config.order),
                "tau": [result.tau[0], result.tau[1]],
                "corrected": result.corrected.to_rows(),
                "warnings": result.warnings,
            }
            if config.trace:
                payload["trace"] = json.loads(emit_trace(result.trace, STRUCTURED, config.order))
            text = json.dumps(payload, indent=2)
        else:
            parts = []
            if config.trace:
                parts.append(emit_trace(result.trace, config.fmt, config.order))
            parts.append("Tau: %s" % (result.tau,))
            parts.append("Error: %s" % result.error.format(config.order))
            parts.append("Corrected:")
            parts.extend(" ".join(row) for row in result.corrected.to_rows())
            parts.extend("Warning: %s" % w for w in result.warnings)
            text = "\n".join(parts)
        self._emit(config, text)

    def handle_oracle(self, options):
        self._require(options, "field", "period", "t")
        config = self._config(options, "error", "random")
        field = load_field(options["field"])
        orders = [options["order"]] if options.get("order") else list(TotalOrder.KINDS)
        report = OracleService().submit(OracleSubmit(
            field, config.period, config.t, orders, trials=options.get("trials"),
            seed=options.get("seed"), q=options.get("q"), uniqueness=options.get("uniqueness", False)))
        if config.fmt == STRUCTURED:
            text = json.dumps(report, indent=2)
        else:
            lines = ["checked: %s" % report["checked"], "failures: %s" % len(report["failures"])]
            for row in report["by_configuration"]:
                lines.append("  %(order)s weight %(weight)s: %(checked)s checked, %(failed)s failed" % row)
            if "uniqueness" in report:
                lines.append("uniqueness: %s polynomials, %s failures" % (
                    report["uniqueness"]["checked"], len(report["uniqueness"]["failures"])))
            text = "\n".join(lines)
        self._emit(config, text)
        if report["failures"] or report.get("uniqueness", {}).get("failures"):
            raise CommandError("oracle found %s failures" % len(report["failures"]), returncode=2)

    def handle_selftest(self, options):
        report = SelfTestService().submit()
        for name in report.reproduced:
            self.stdout.write("ok        %s" % name)
        for name, mismatches in report.mismatches.items():
            self.stdout.write("MISMATCH  %s" % name)
            for mismatch in mismatches:
                self.stdout.write("    %s" % mismatch)
        for note in report.notes:
            self.stdout.write("note: %s" % note)
        self.stdout.write(report.summary())
        if not report.ok:
            raise CommandError(report.summary(), returncode=2)
