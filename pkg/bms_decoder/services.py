import json
import logging
import os
import random

from .apps import BmsDecoderConfig
from .bms import BmsError, run
from .codes import AbelianCode, CodeError, Word, decode, random_codeword
from .ff import Field, FieldError
from .locator import (
    ErrorPolynomial, LocatorError, alpha_pair, load_syndromes, support_from_basis,
    syndromes, termination_check,
)
from .oracle import OracleError, exhaustive_uniqueness, random_sweep
from .order import OrderError, point, s_of_t
from .poly import PolynomialError, parse_polynomial

logger = logging.getLogger(__name__)

GOLDEN_FILES = ["example_5x7", "example_5x5", "example_15x15", "example_f2_5_15"]

PRINTED = "PRINTED"
DERIVED = "DERIVED"
PRINTED_SUSPECT = "PRINTED-SUSPECT"


class ServiceError(Exception):
    CONFIGURATION = 1
    DECODE_FAILURE = 2

    ERROR_CODES = {
        1: "Configuration error",
        2: "Decoding failed",
    }

    def __init__(self, code, msg=None):
        self.code = code
        self.msg = ServiceError.ERROR_CODES.get(self.code, "Unknown exception")
        if msg:
            self.msg = "%s: %s" % (self.msg, msg)

    def __str__(self):
        return "ServiceError %s: %s" % (self.code, self.msg)


# errors caused by the input data rather than by the configuration
_FAILURE_CODES = {
    BmsError: {BmsError.CAPABILITY_EXCEEDED, BmsError.NEGATIVE_SHIFT, BmsError.NOT_NORMAL_FORM,
               BmsError.IRREDUCIBLE_TERM, BmsError.NO_AUXILIARY},
    LocatorError: {LocatorError.INCONSISTENT_SYSTEM, LocatorError.NOT_IN_BASE_FIELD,
                   LocatorError.CAPABILITY_EXCEEDED},
    CodeError: {CodeError.NOT_CODEWORD_AFTER_CORRECTION, CodeError.WEIGHT_EXCEEDS_CAPABILITY},
}

_MODULE_ERRORS = (FieldError, OrderError, PolynomialError, BmsError, LocatorError, CodeError, OracleError)


def _service_error(exc):
    codes = _FAILURE_CODES.get(type(exc), set())
    if exc.code in codes:
        return ServiceError(ServiceError.DECODE_FAILURE, str(exc))
    return ServiceError(ServiceError.CONFIGURATION, str(exc))


class SyndromeSubmit(object):
    def __init__(self, field, t, tau, error_text, period):
        self.field = field
        self.t = t
        self.tau = tau
        self.error_text = error_text
        self.period = period


class BmsSubmit(object):
    def __init__(self, field, values, t, order, period=None, tau=None, normalize_steps=False, q=None):
        self.field = field
        self.values = values
        self.t = t
        self.order = order
        self.period = period
        self.tau = tau
        self.normalize_steps = normalize_steps
        self.q = q


class DecodeSubmit(object):
    def __init__(self, code, received, t, order, tau=None, normalize_steps=False):
        self.code = code
        self.received = received
        self.t = t
        self.order = order
        self.tau = tau
        self.normalize_steps = normalize_steps


class OracleSubmit(object):
    def __init__(self, field, period, t, orders, trials=None, seed=None, q=2, uniqueness=False):
        self.field = field
        self.period = period
        self.t = t
        self.orders = orders
        self.trials = trials
        self.seed = seed
        self.q = q
        self.uniqueness = uniqueness


class SyndromeService(object):
    def submit(self, submit):
        try:
            e = ErrorPolynomial.from_polynomial(parse_polynomial(submit.field, submit.error_text))
            pair = alpha_pair(submit.field, submit.period)
            return syndromes(e, submit.tau, pair, s_of_t(submit.t))
        except (KeyboardInterrupt, SystemExit):
            raise
        except _MODULE_ERRORS as exc:
            logger.warning("syndrome computation failed", exc_info=True)
            raise _service_error(exc)


class BmsService(object):
    def submit(self, submit):
        try:
            result = run(
                submit.values, submit.order, submit.t, submit.field,
                period=submit.period, normalize_steps=submit.normalize_steps)
            verdict = None
            if submit.period is not None and submit.tau is not None and submit.q is not None:
                pair = alpha_pair(submit.field, submit.period)
                verdict = termination_check(result.basis, submit.values, submit.tau, pair, submit.q)
            return result, verdict
        except (KeyboardInterrupt, SystemExit):
            raise
        except _MODULE_ERRORS as exc:
            logger.warning("BMS run failed", exc_info=True)
            raise _service_error(exc)


class DecodeService(object):
    def submit(self, submit):
        try:
            result = decode(
                submit.code, submit.received, submit.t, submit.order,
                tau=submit.tau, normalize_steps=submit.normalize_steps)
        except (KeyboardInterrupt, SystemExit):
            raise
        except _MODULE_ERRORS as exc:
            logger.warning("decoding failed", exc_info=True)
            raise _service_error(exc)
        for warning in result.warnings:
            logger.warning("decode: %s", warning)
        logger.info("decoded error %s (weight %s)", result.error, result.error.weight)
        return result


class OracleService(object):
    def submit(self, submit):
        seed = submit.seed if submit.seed is not None else BmsDecoderConfig.seed
        trials = submit.trials if submit.trials is not None else BmsDecoderConfig.sweep_trials
        rng = random.Random(seed)
        try:
            report = random_sweep(submit.field, submit.period, submit.t, submit.orders, trials, rng, q=submit.q)
            if submit.uniqueness:
                report["uniqueness"] = exhaustive_uniqueness(
                    submit.period[0], submit.period[1], submit.q, submit.t, submit.field,
                    limit=BmsDecoderConfig.uniqueness_space_limit or 10 ** 7)
            return report
        except (KeyboardInterrupt, SystemExit):
            raise
        except _MODULE_ERRORS as exc:
            logger.warning("oracle run failed", exc_info=True)
            raise _service_error(exc)


def load_golden(name, golden_dir=None):
    golden_dir = golden_dir or BmsDecoderConfig.golden_dir or os.path.join(os.path.dirname(__file__), "golden")
    with open(os.path.join(golden_dir, "%s.json" % name)) as f:
        return json.load(f)


class GoldenCase(object):
    """A golden file with its objects built."""

    def __init__(self, data):
        self.data = data
        self.name = data["name"]
        self.field = Field.from_config(data["field"])
        self.period = tuple(data["period"])
        self.tau = point(data["tau"])
        self.t = data["t"]
        self.order = data["order"]
        self.q = data.get("q", 2)
        self.normalize_steps = data.get("normalize_steps", False)
        self.error = ErrorPolynomial.from_polynomial(parse_polynomial(self.field, data["error"]), q=self.q)
        self.alpha_pair = alpha_pair(self.field, self.period)
        self.code = AbelianCode.from_config(data["code"], field=self.field) if "code" in data else None

    def computed_syndromes(self):
        return syndromes(self.error, self.tau, self.alpha_pair, s_of_t(self.t))

    def run(self, stop=None):
        return run(
            self.computed_syndromes(), self.order, self.t, self.field, period=self.period,
            normalize_steps=self.normalize_steps, stop=stop)

    def decode(self, seed=0):
        received = random_codeword(self.code, random.Random(seed)) + Word.from_polynomial(
            self.error, self.code.r1, self.code.r2)
        return decode(self.code, received, self.t, self.order, tau=self.tau, normalize_steps=self.normalize_steps)


class SelfTestReport(object):
    def __init__(self):
        self.reproduced = []
        self.mismatches = {}
        self.notes = []

    @property
    def total(self):
        return len(self.reproduced) + len(self.mismatches)

    @property
    def ok(self):
        return not self.mismatches

    def summary(self):
        return "%s/%s examples reproduced" % (len(self.reproduced), self.total)


def _fmt(polys, order):
    return [f.format(order) for f in polys]


def compare_golden(case):
    """Mismatch descriptions and deviation notes for one golden case."""
    data = case.data
    mismatches, notes = [], []
    computed = case.computed_syndromes()
    for entry in data.get("syndromes", []):
        n = point(entry["n"])
        value = case.field.format_element(computed[n])
        if entry["source"] == PRINTED_SUSPECT:
            if value != entry["v"]:
                notes.append("%s: u%s printed %s, computed %s" % (case.name, n, entry["v"], value))
        elif value != entry["v"]:
            mismatches.append("u%s: expected %s, got %s" % (n, entry["v"], value))
    if case.code is not None:
        result = case.decode()
        if result.error != case.error:
            mismatches.append("decoded error %s" % result.error)
        trace, basis, delta = result.trace, result.basis, result.delta
    else:
        bms_run = case.run()
        trace, basis, delta = bms_run.trace, bms_run.basis, bms_run.delta
    by_l = {record.l: record for record in trace}
    for row in data.get("trace", []):
        l = point(row["l"])
        record = by_l.get(l)
        if record is None:
            mismatches.append("no trace row at %s" % (l,))
            continue
        got = {"F": _fmt(record.F, case.order), "G": _fmt(record.G, case.order),
               "delta": [[p[0], p[1]] for p in record.delta]}
        for key in ("F", "G", "delta"):
            if key in row and row[key] != got[key]:
                mismatches.append("%s at %s: expected %s, got %s" % (key, l, row[key], got[key]))
            printed = row.get("printed_%s" % key)
            if printed is not None and printed != got[key]:
                notes.append("%s: %s at %s printed %s, derived %s" % (case.name, key, l, printed, got[key]))
    if "basis" in data and _fmt(basis, case.order) != data["basis"]:
        mismatches.append("basis %s" % _fmt(basis, case.order))
    if "support" in data:
        support = support_from_basis(basis, case.alpha_pair, case.period)
        if sorted([p[0], p[1]] for p in support) != sorted(data["support"]):
            mismatches.append("support %s" % sorted(support))
    if "truncate_at" in data:
        truncated = case.run(stop=point(data["truncate_at"]))
        if _fmt(truncated.basis, case.order) == data["basis"]:
            mismatches.append("basis already reached at %s" % (point(data["truncate_at"]),))
    if len(delta) != case.error.weight:
        mismatches.append("|delta| = %s, weight %s" % (len(delta), case.error.weight))
    return mismatches, notes + list(data.get("notes", []))


class SelfTestService(object):
    def submit(self, names=None, golden_dir=None):
        report = SelfTestReport()
        for name in names or GOLDEN_FILES:
            try:
                case = GoldenCase(load_golden(name, golden_dir))
                mismatches, notes = compare_golden(case)
            except (KeyboardInterrupt, SystemExit):
                raise
            except _MODULE_ERRORS + (IOError, ValueError, KeyError) as exc:
                logger.warning("golden case %s failed", name, exc_info=True)
                mismatches, notes = [str(exc)], []
            if mismatches:
                report.mismatches[name] = mismatches
            else:
                report.reproduced.append(name)
            report.notes.extend(notes)
        logger.info("selftest: %s", report.summary())
        return report


def load_field(path):
    try:
        with open(path) as f:
            return Field.from_config(json.load(f), max_order=BmsDecoderConfig.max_field_order or 2 ** 20)
    except (IOError, ValueError) as exc:
        raise ServiceError(ServiceError.CONFIGURATION, "cannot read field %s: %s" % (path, exc))
    except FieldError as exc:
        raise ServiceError(ServiceError.CONFIGURATION, str(exc))


def load_syndrome_file(path, field):
    try:
        with open(path) as f:
            return load_syndromes(f.read(), field)
    except IOError as exc:
        raise ServiceError(ServiceError.CONFIGURATION, "cannot read %s: %s" % (path, exc))
    except LocatorError as exc:
        raise ServiceError(ServiceError.CONFIGURATION, str(exc))


def load_code(path):
    try:
        with open(path) as f:
            return AbelianCode.from_config(json.load(f))
    except (IOError, ValueError) as exc:
        raise ServiceError(ServiceError.CONFIGURATION, "cannot read code %s: %s" % (path, exc))
    except (CodeError, FieldError) as exc:
        raise ServiceError(ServiceError.CONFIGURATION, str(exc))


def load_word(path, code):
    try:
        with open(path) as f:
            return Word.loads(f.read(), code.field, q=code.q)
    except IOError as exc:
        raise ServiceError(ServiceError.CONFIGURATION, "cannot read word %s: %s" % (path, exc))
    except (CodeError, FieldError) as exc:
        raise ServiceError(ServiceError.CONFIGURATION, str(exc))
