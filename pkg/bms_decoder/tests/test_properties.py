from django.test import TestCase

from bms_decoder.bms import BmsError, BmsState, discrepancy, run, step
from bms_decoder.codes import CodeError, Word, code_create, decode, random_codeword, random_error
from bms_decoder.ff import FieldError, default_field
from bms_decoder.locator import ErrorPolynomial, LocatorError, PeriodicArray, alpha_pair, complete_array, syndromes
from bms_decoder.oracle import check_instance, exhaustive_uniqueness, membership_full, random_sweep
from bms_decoder.order import (
    DeltaSet, Point, condition_check, delta_from_points, enumerate_delta_sets, grid, grid_schedule,
    hyperbolic_set, minkowski_sum, preceq, s_of_t, s_of_t_size, schedule, total_order,
)
from bms_decoder.poly import BivariatePolynomial, NeedsIndex, PartialView, recurrence_value
from bms_decoder.services import GOLDEN_FILES, GoldenCase, load_golden
from bms_decoder.test_helpers import create_test_code, create_test_field, create_test_rng


def _planted(field, period, t, kind, rng, weight=None):
    """A random error and a tau for which the order's condition holds."""
    order = total_order(kind)
    pair = alpha_pair(field, period)
    while True:
        w = rng.randint(1, t) if weight is None else weight
        positions = rng.sample(grid(*period), w)
        e = ErrorPolynomial(field, {n: field.one for n in positions}, q=2)
        tau = Point(rng.randrange(period[0]), rng.randrange(period[1]))
        values = syndromes(e, tau, pair, s_of_t(t))
        if condition_check(values, t, order.condition):
            return e, tau, values


class FieldPropertyTest(TestCase):
    def test_distributivity(self):
        rng = create_test_rng()
        for field in (create_test_field(), default_field(3, 2), default_field(2, 12)):
            elements = [field.zero] + [field.element(rng.randrange(field.group_order)) for _ in range(30)]
            with self.subTest(field=field):
                for _ in range(1000):
                    x, y, z = (rng.choice(elements) for _ in range(3))
                    self.assertEqual(x * (y + z), x * y + x * z)

    def test_logs_add(self):
        field = create_test_field()
        nonzero = [x for x in field.elements() if x]
        for x in nonzero:
            for y in nonzero:
                self.assertEqual((x * y).log, (x.log + y.log) % 15)

    def test_roots_of_unity_have_exact_order(self):
        field = create_test_field()
        for r in (1, 3, 5, 15):
            self.assertEqual(field.multiplicative_order(field.root_of_unity(r)), r)

    def test_base_field_membership(self):
        field = create_test_field()
        for q in (2, 4, 16):
            with self.subTest(q=q):
                members = {x.log for x in field.elements() if field.in_base_field(x, q)}
                fixed = {x.log for x in field.elements() if x ** q == x}
                self.assertEqual(members, fixed)
                self.assertEqual(len(members), q)


class OrderPropertyTest(TestCase):
    def test_s_of_t_size(self):
        for t in range(1, 21):
            self.assertEqual(len(s_of_t(t)), s_of_t_size(t))
            self.assertEqual(s_of_t_size(t), (t * t + 7 * t) // 2 - 1)

    def test_total_orders_refine_componentwise(self):
        rng = create_test_rng(1)
        for kind in ("lex", "graded"):
            order = total_order(kind)
            for _ in range(1000):
                p, q, r = (Point(rng.randrange(10), rng.randrange(10)) for _ in range(3))
                self.assertEqual(order.compare(p, q), -order.compare(q, p))
                if preceq(p, q) and p != q:
                    self.assertEqual(order.compare(p, q), -1)
                if order.compare(p, q) < 0 and order.compare(q, r) < 0:
                    self.assertEqual(order.compare(p, r), -1)

    def test_grid_schedule_visits_each_point_once(self):
        for kind in ("lex", "graded"):
            for period in ((5, 5), (5, 7), (3, 15)):
                with self.subTest(order=kind, period=period):
                    visited = list(grid_schedule(kind, *period))
                    self.assertEqual(len(visited), period[0] * period[1])
                    self.assertEqual(set(visited), set(grid(*period)))
                    self.assertEqual(visited, total_order(kind).sorted(visited))

    def test_minkowski_sums_stay_in_s_of_t(self):
        for t in range(1, 7):
            S = s_of_t(t)
            for delta in enumerate_delta_sets(t):
                with self.subTest(t=t, delta=delta):
                    self.assertLessEqual(minkowski_sum(delta.members, delta.members), S)
                    if len(delta):
                        self.assertLessEqual(minkowski_sum(delta.defining_points, delta.members), S)

    def test_hyperbolic_set_inside_s_of_t(self):
        self.assertTrue(hyperbolic_set(10) < s_of_t(5))

    def test_delta_from_points(self):
        self.assertEqual(delta_from_points([(1, 0), (0, 1)]).members, {Point(0, 0)})
        self.assertEqual(delta_from_points([(1, 0), (0, 2)]).members, {Point(0, 0), Point(0, 1)})
        self.assertEqual(len(delta_from_points([(2, 0), (0, 2)])), 4)
        for delta in enumerate_delta_sets(5):
            self.assertEqual(DeltaSet.from_members(delta.members).defining_points, delta.defining_points)


class RecurrencePropertyTest(TestCase):
    def setUp(self) -> None:
        super(RecurrencePropertyTest, self).setUp()
        self.field = create_test_field()
        self.rng = create_test_rng(2)
        e = BivariatePolynomial(self.field, {(1, 2): self.field.one, (3, 0): self.field.one})
        self.U = PeriodicArray.from_error(e, (1, 1), alpha_pair(self.field, (5, 5)), (5, 5))

    def random_polynomial(self, terms=3):
        return BivariatePolynomial(self.field, {
            Point(self.rng.randrange(4), self.rng.randrange(4)): self.field.element(self.rng.randrange(15))
            for _ in range(terms)})

    def test_periodic_shift_invariance(self):
        for _ in range(50):
            f = self.random_polynomial()
            n = f.leading_point("lex") + Point(self.rng.randrange(3), self.rng.randrange(3))
            self.assertEqual(recurrence_value(f, self.U, n, "lex"),
                             recurrence_value(f, self.U, n + Point(5, 0), "lex"))
            self.assertEqual(recurrence_value(f, self.U, n, "lex"),
                             recurrence_value(f, self.U, n + Point(0, 5), "lex"))

    def test_shifted_sum(self):
        order = total_order("lex")
        checked = 0
        while checked < 50:
            f, g = self.random_polynomial(), self.random_polynomial()
            s_f, s_g = f.leading_point(order), g.leading_point(order)
            if order.compare(s_f, s_g) >= 0:
                continue
            n = s_g + Point(self.rng.randrange(4), self.rng.randrange(4))
            self.assertEqual(
                recurrence_value(f + g, self.U, n, order),
                recurrence_value(f, self.U, n - s_g + s_f, order) + recurrence_value(g, self.U, n, order))
            checked += 1

    def test_valid_polynomials_stay_valid(self):
        # Given X2 + a^6 and the quadratic in X1 that generate the array
        case = GoldenCase(load_golden("example_5x5"))
        U = PeriodicArray.from_error(case.error, case.tau, case.alpha_pair, case.period)
        f, g = case.run().basis
        # Then shifts and combinations are still valid
        self.assertTrue(membership_full(f.shift((1, 2)), U))
        self.assertTrue(membership_full(f.shift((0, 1)) + g.scale(case.field.element(4)), U))


class BmsPropertyTest(TestCase):
    def assert_trace_properties(self, result, t, order):
        previous = frozenset()
        for record in result.trace:
            current = frozenset(record.delta)
            self.assertLessEqual(previous, current)
            self.assertLessEqual(len(current), t)
            for s in record.failing:
                self.assertIn(record.l - s, current)
            previous = current
        leads = tuple(f.leading_point(order) for f in result.basis)
        self.assertEqual(leads, result.delta.defining_points)

    def test_golden_traces(self):
        for name in GOLDEN_FILES:
            with self.subTest(name=name):
                case = GoldenCase(load_golden(name))
                self.assert_trace_properties(case.run(), case.t, case.order)

    def test_random_runs(self):
        field = create_test_field()
        rng = create_test_rng(3)
        for kind in ("lex", "graded"):
            for _ in range(25):
                e, tau, values = _planted(field, (5, 5), 2, kind, rng)
                with self.subTest(order=kind, error=str(e), tau=tau):
                    result = run(values, kind, 2, field, period=(5, 5))
                    self.assert_trace_properties(result, 2, total_order(kind))
                    self.assertEqual(len(result.delta), e.weight)

    def test_every_step_keeps_agreement_and_validity(self):
        field = create_test_field()
        rng = create_test_rng(11)
        pair = alpha_pair(field, (5, 5))
        for trial in range(1000):
            kind = ("lex", "graded")[trial % 2]
            e, tau, values = _planted(field, (5, 5), 2, kind, rng)
            U = PeriodicArray.from_error(e, tau, pair, (5, 5))
            view = PartialView(values, (5, 5))
            state = BmsState(field, kind, 2)
            seen = []
            for l in schedule(kind, 2):
                # valid pairs whose leading points sum below l agree at l
                for f in state.F:
                    for g in state.F:
                        if not preceq(f.leading_point(state.order) + g.leading_point(state.order), l):
                            continue
                        f_value = recurrence_value(f, view, l, state.order)
                        g_value = recurrence_value(g, view, l, state.order)
                        if not isinstance(f_value, NeedsIndex) and not isinstance(g_value, NeedsIndex):
                            self.assertEqual(f_value, g_value)
                record = step(state, view, l)
                seen.append(record.l)
                for s in record.failing:
                    self.assertIn(record.l - s, state.delta)
                for f in state.F:
                    for n in seen:
                        value = recurrence_value(f, view, n, state.order)
                        if isinstance(value, NeedsIndex):
                            # outside S(t) the run reads the normal form
                            value = discrepancy(state, f, view, n)
                        else:
                            self.assertEqual(value, recurrence_value(f, U, n, state.order))
                        self.assertFalse(value, "%s fails at %s (trial %s)" % (f, n, trial))
                for corner, entry in state.G.items():
                    self.assertIn(corner, state.delta)
                    self.assertEqual(entry.span, corner)
                    value = recurrence_value(entry.g, view, entry.k, state.order)
                    if not isinstance(value, NeedsIndex):
                        self.assertEqual(value, entry.v)

    def test_fresh_auxiliaries_reach_the_same_footprint(self):
        instances = []
        for name in GOLDEN_FILES:
            case = GoldenCase(load_golden(name))
            instances.append((case.field, case.period, case.t, case.order, case.error, case.tau,
                              case.computed_syndromes(), case.normalize_steps))
        field = create_test_field()
        rng = create_test_rng(12)
        for trial in range(50):
            kind = ("lex", "graded")[trial % 2]
            e, tau, values = _planted(field, (5, 5), 2, kind, rng)
            instances.append((field, (5, 5), 2, kind, e, tau, values, False))
        for field, period, t, kind, e, tau, values, normalize in instances:
            with self.subTest(order=kind, error=str(e), tau=tau):
                U = PeriodicArray.from_error(e, tau, alpha_pair(field, period), period)
                # When
                kept = run(values, kind, t, field, period=period, normalize_steps=normalize)
                fresh = run(values, kind, t, field, period=period, normalize_steps=normalize,
                            fresh_auxiliaries=True)
                # Then
                self.assertEqual(fresh.delta, kept.delta)
                for f in kept.basis + fresh.basis:
                    self.assertTrue(membership_full(f, U))

    def test_orders_generate_the_same_ideal(self):
        field = create_test_field()
        rng = create_test_rng(4)
        checked = 0
        while checked < 10:
            e, tau, values = _planted(field, (5, 5), 2, "lex", rng)
            if not condition_check(values, 2, "g"):
                continue
            U = PeriodicArray.from_error(e, tau, alpha_pair(field, (5, 5)), (5, 5))
            for kind in ("lex", "graded"):
                for f in run(values, kind, 2, field, period=(5, 5)).basis:
                    self.assertTrue(membership_full(f, U))
            checked += 1

    def test_array_is_determined_by_s_of_t(self):
        field = create_test_field()
        rng = create_test_rng(5)
        pair = alpha_pair(field, (5, 5))
        for _ in range(20):
            e, tau, values = _planted(field, (5, 5), 2, "lex", rng)
            basis = run(values, "lex", 2, field, period=(5, 5)).basis
            self.assertEqual(complete_array(basis, values, "lex", (5, 5)),
                             PeriodicArray.from_error(e, tau, pair, (5, 5)))


class OracleSweepTest(TestCase):
    def test_sweep_5x7(self):
        # When
        report = random_sweep(default_field(2, 12), (5, 7), 2, ["lex", "graded"], 4, create_test_rng(6))
        # Then
        self.assertEqual(report["checked"], 8)
        self.assertEqual(report["failures"], [])

    def test_uniqueness_5x5(self):
        report = exhaustive_uniqueness(5, 5, 2, 2, create_test_field())
        self.assertEqual(report["checked"], 326)
        self.assertEqual(report["failures"], [])

    def test_sweep_is_deterministic(self):
        field = create_test_field()
        first = random_sweep(field, (5, 5), 2, ["lex"], 5, create_test_rng(7))
        second = random_sweep(field, (5, 5), 2, ["lex"], 5, create_test_rng(7))
        self.assertEqual(first, second)

    def test_quaternary_instances(self):
        field = create_test_field()
        rng = create_test_rng(8)
        for _ in range(5):
            e, tau, _ = _planted(field, (5, 5), 2, "lex", rng)
            coefficients = {n: field.element(5 * rng.randrange(3)) for n in e.support()}
            quaternary = ErrorPolynomial(field, coefficients, q=4)
            self.assertEqual(check_instance(quaternary, tau, "lex", 2, field, (5, 5), 4), [])


class DecodePropertyTest(TestCase):
    def test_every_single_error_in_a_3x3_code(self):
        # Given a binary 3x3 code over GF(4) with (1,1) + S(1) in its defining set
        code = code_create(3, 3, 2, [[1, 1], [1, 2]])
        codeword = random_codeword(code, create_test_rng(9))
        for n in grid(3, 3):
            with self.subTest(position=n):
                error = Word(code.field, 3, 3, {n: code.field.one}, q=2)
                # When
                result = decode(code, codeword + error, 1, "lex", tau=(1, 1))
                # Then
                self.assertEqual(result.corrected, codeword)
                self.assertEqual(result.error.weight, 1)

    def test_beyond_capability_never_lands_far_away(self):
        # Given weight-3 errors against a code correcting two
        code = create_test_code(create_test_field())
        rng = create_test_rng(10)
        for _ in range(100):
            codeword = random_codeword(code, rng)
            received = codeword + Word.from_polynomial(random_error(code, 3, rng), 5, 15)
            # When
            try:
                result = decode(code, received, 2, "lex", tau=(2, 1))
            except (BmsError, CodeError, LocatorError, FieldError):
                continue
            # Then
            self.assertTrue(code.is_codeword(result.corrected))
            self.assertLessEqual((received - result.corrected).weight, 2)
            self.assertNotEqual(result.corrected, codeword)
