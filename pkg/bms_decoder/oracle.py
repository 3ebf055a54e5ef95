"""
Brute-force checks for the fast path: footprints by dense linear algebra
over one full period, recurrence checks on whole arrays and exhaustive
uniqueness sweeps. Slow on purpose.
"""
import logging
from collections import namedtuple
from itertools import combinations, product

import pandas as pd

from . import bms
from .locator import (
    ErrorPolynomial, LocatorError, PeriodicArray, alpha_pair, solve_coefficients,
    support_from_basis, syndromes,
)
from .order import DeltaSet, Point, condition_check, grid, preceq, s_of_t, total_order
from .poly import BivariatePolynomial

logger = logging.getLogger(__name__)


class OracleError(Exception):
    SPACE_TOO_LARGE = 1
    NOT_FULLY_KNOWN = 2

    ERROR_CODES = {
        1: "Parameter space too large for exhaustive search",
        2: "Array is not fully known",
    }

    def __init__(self, code, msg=None):
        self.code = code
        self.msg = OracleError.ERROR_CODES.get(self.code, "Unknown exception")
        if msg:
            self.msg = "%s (%s)" % (self.msg, msg)

    def __str__(self):
        return "OracleError %s: %s" % (self.code, self.msg)


FootprintResult = namedtuple("FootprintResult", ["delta", "reduced_basis"])


def _field_of(U):
    return next(iter(U.values.values())).field


def footprint_bruteforce(U, order, field=None):
    """
    Walk candidate leading points in increasing order. The window vector
    (u_(c+k))_k of a candidate c either depends on the vectors of the
    footprint points found so far, which yields a basis element with
    leading point c, or it joins the footprint.
    """
    if not U.is_complete:
        raise OracleError(OracleError.NOT_FULLY_KNOWN, "%s of %s values" % (len(U.values), U.period[0] * U.period[1]))
    order = total_order(order)
    field = field or _field_of(U)
    r1, r2 = U.period
    window = grid(r1, r2)
    candidates = order.sorted(window)
    # echelon rows: (pivot column, vector, combination over footprint points)
    rows = []
    delta_points = []
    basis = []
    for c in candidates:
        if any(preceq(f.leading_point(order), c) for f in basis):
            continue
        vector = [U[c + k] for k in window]
        combination = {c: field.one}
        for pivot, row, row_combination in rows:
            if vector[pivot]:
                factor = vector[pivot] / row[pivot]
                vector = [x - factor * y for x, y in zip(vector, row)]
                for m, coefficient in row_combination.items():
                    combination[m] = combination.get(m, field.zero) - factor * coefficient
        pivot = next((i for i, x in enumerate(vector) if x), None)
        if pivot is None:
            basis.append(BivariatePolynomial(field, combination))
        else:
            rows.append((pivot, vector, combination))
            delta_points.append(c)
    delta = DeltaSet.from_members(delta_points)
    # leading points on the period boundary come from X1^r1 - 1 and X2^r2 - 1
    leads = {f.leading_point(order) for f in basis}
    for s in delta.defining_points:
        if s not in leads:
            basis.append(BivariatePolynomial(field, {s: field.one, s.reduce(U.period): -field.one}))
    basis = sorted(basis, key=lambda f: (-f.leading_point(order)[0], f.leading_point(order)[1]))
    return FootprintResult(delta, basis)


def membership_full(f, U):
    """f[U]_n = 0 for every n, checked on one period of shifts."""
    if not U.is_complete:
        raise OracleError(OracleError.NOT_FULLY_KNOWN)
    for k in grid(*U.period):
        total = f.field.zero
        for m, c in f.terms.items():
            total = total + c * U[m + k]
        if total:
            return False
    return True


def enumerate_error_polynomials(r1, r2, q, t, field):
    step = field.group_order // (q - 1)
    nonzero = [field.element(i * step) for i in range(q - 1)]
    for weight in range(t + 1):
        for positions in combinations(grid(r1, r2), weight):
            for coefficients in product(nonzero, repeat=weight):
                yield ErrorPolynomial(field, dict(zip(positions, coefficients)), q=q)


def _count_polynomials(r1, r2, q, t):
    total, ways = 0, 1
    size = r1 * r2
    for weight in range(t + 1):
        total += ways * (q - 1) ** weight
        ways = ways * (size - weight) // (weight + 1)
    return total


def _records(df):
    return [{k: (v.item() if hasattr(v, "item") else v) for k, v in row.items()} for row in df.to_dict("records")]


def exhaustive_uniqueness(r1, r2, q, t, field, limit=10 ** 7):
    """
    For every tau, no two distinct polynomials of weight <= t share their
    syndromes on tau + S(t); at tau = (0,0) every syndrome array has a
    footprint of exactly the polynomial's weight.
    """
    count = _count_polynomials(r1, r2, q, t)
    pairs = count * (count - 1) // 2 * r1 * r2
    if pairs > limit:
        raise OracleError(OracleError.SPACE_TOO_LARGE, "%s pairs > %s" % (pairs, limit))
    if t == 0:
        return {"checked": 1, "pairs": 0, "failures": [], "by_tau": []}
    pair = alpha_pair(field, (r1, r2))
    indices = sorted(s_of_t(t))
    arrays = []
    failures = []
    for e in enumerate_error_polynomials(r1, r2, q, t, field):
        U = PeriodicArray.from_error(e, (0, 0), pair, (r1, r2))
        footprint = footprint_bruteforce(U, "graded", field)
        if len(footprint.delta) != e.weight:
            failures.append({"kind": "footprint", "error": str(e), "delta": len(footprint.delta)})
        arrays.append((e, U))
    rows = []
    for tau in grid(r1, r2):
        seen = {}
        collisions = 0
        for e, U in arrays:
            signature = tuple(U[tau + n].log for n in indices)
            if signature in seen:
                collisions += 1
                failures.append({"kind": "syndromes", "tau": [tau[0], tau[1]], "first": str(seen[signature]), "second": str(e)})
            else:
                seen[signature] = e
        rows.append({"tau": str(tau), "checked": len(arrays), "collisions": collisions})
    df = pd.DataFrame.from_dict(rows)
    logger.info("uniqueness %sx%s q=%s t=%s: %s polynomials, %s failures", r1, r2, q, t, len(arrays), len(failures))
    return {
        "checked": len(arrays),
        "pairs": pairs,
        "failures": failures,
        "by_tau": _records(df.groupby(["tau"])[["checked", "collisions"]].sum().reset_index()),
    }


def _random_error(field, period, q, weight, rng):
    step = field.group_order // (q - 1)
    positions = rng.sample(grid(*period), weight)
    return ErrorPolynomial(field, {n: field.element(rng.randrange(q - 1) * step) for n in positions}, q=q)


def check_instance(e, tau, order, t, field, period, q):
    """Run every oracle comparison on one planted error; returns a list of problems."""
    order = total_order(order)
    pair = alpha_pair(field, period)
    U = PeriodicArray.from_error(e, tau, pair, period)
    values = {n: U[n] for n in s_of_t(t)}
    problems = []
    try:
        result = bms.run(values, order, t, field, period=period)
    except bms.BmsError as exc:
        return [str(exc)]
    footprint = footprint_bruteforce(U, order, field)
    if footprint.delta != result.delta:
        problems.append("delta %s != footprint %s" % (result.delta, footprint.delta))
    for f in result.basis:
        if not membership_full(f, U):
            problems.append("%s does not generate the array" % f)
    try:
        support = support_from_basis(result.basis, pair, period)
        recovered = solve_coefficients(support, values, tau, pair, q)
        if recovered != e:
            problems.append("recovered %s instead of %s" % (recovered, e))
    except LocatorError as exc:
        problems.append(str(exc))
    return problems


def random_sweep(field, period, t, orders, trials, rng, q=2):
    pair = alpha_pair(field, period)
    rows = []
    failures = []
    for kind in orders:
        order = total_order(kind)
        for _ in range(trials):
            weight = rng.randint(0, t)
            while True:
                e = _random_error(field, period, q, weight, rng)
                tau = None
                for _ in range(50):
                    candidate = Point(rng.randrange(period[0]), rng.randrange(period[1]))
                    values = syndromes(e, candidate, pair, s_of_t(t))
                    if weight == 0 or condition_check(values, t, order.condition):
                        tau = candidate
                        break
                if tau is not None:
                    break
            problems = check_instance(e, tau, order, t, field, period, q)
            if problems:
                failures.append({"order": order.kind, "error": str(e), "tau": [tau[0], tau[1]], "problems": problems})
            rows.append({"order": order.kind, "weight": weight, "checked": 1, "failed": int(bool(problems))})
    df = pd.DataFrame.from_dict(rows)
    by_configuration = []
    if rows:
        by_configuration = _records(df.groupby(["order", "weight"])[["checked", "failed"]].sum().reset_index())
    logger.info("sweep %sx%s t=%s: %s trials, %s failures", period[0], period[1], t, len(rows), len(failures))
    return {"checked": len(rows), "failures": failures, "by_configuration": by_configuration}
