import io
import json
import os
import tempfile

from django.core.management.base import CommandError
from django.test import TestCase

from bms_decoder.cli import (
    STRUCTURED, TABLE_HEADER, RunConfig, cmd_dispatch, emit_basis, emit_trace, parse_pair, parse_trace,
)
from bms_decoder.codes import Word
from bms_decoder.order import Point, s_of_t
from bms_decoder.services import GoldenCase, load_golden
from bms_decoder.test_helpers import GF16, create_test_code, create_test_error, create_test_field


class EmitTest(TestCase):
    def setUp(self) -> None:
        super(EmitTest, self).setUp()
        self.case = GoldenCase(load_golden("example_5x5"))
        self.result = self.case.run()

    def test_table(self):
        # When
        lines = emit_trace(self.result.trace).splitlines()
        # Then
        self.assertEqual(lines[0], TABLE_HEADER)
        self.assertEqual(lines[1], "(0,0)→ {X1,X2} {1} {(0,0)}")
        self.assertEqual(lines[2], "(0,1)→ {X1,X2+a^6} {1} {(0,0)}")
        self.assertEqual(lines[3], "(0,2)→ Same")
        self.assertEqual(lines[7], "(2,0)→ {X1^2+a^2*X1+a^9,X2+a^6} {X1+a^2} {(0,0),(1,0)}")

    def test_structured_trace(self):
        text = emit_trace(self.result.trace, STRUCTURED)
        rows = json.loads(text)
        self.assertEqual(rows[6]["failing"], [[1, 0]])
        parsed = parse_trace(text, self.case.field)
        self.assertEqual([record.F for record in parsed], [record.F for record in self.result.trace])

    def test_basis(self):
        text = emit_basis(self.result.basis, self.result.delta, "lex")
        self.assertEqual(text, "Basis: {X1^2+a^2*X1+a^9,X2+a^6}\nDelta: {(0,0),(1,0)}")
        warned = emit_basis(self.result.basis, self.result.delta, "lex", condition_met=False)
        self.assertIn("l-condition does not hold", warned)
        data = json.loads(emit_basis(self.result.basis, self.result.delta, "lex", STRUCTURED))
        self.assertEqual(data["delta"], [[0, 0], [1, 0]])


class RunConfigTest(TestCase):
    def test_validate(self):
        self.assertEqual(RunConfig(t=2, period=(5, 5), source="X1", source_kind="error").validate(), [])
        self.assertEqual(len(RunConfig(t=2, period=(5, 5)).validate()), 1)
        problems = RunConfig(t=3, period=(5, 5), source="X1", source_kind="error", fmt="xml").validate()
        self.assertEqual(len(problems), 2)

    def test_validate_against_code(self):
        code = create_test_code(create_test_field())
        config = RunConfig(t=3, source="w.json", source_kind="word", code=code)
        self.assertEqual(config.validate(), ["t=3 exceeds half of the period (5, 15)"])

    def test_parse_pair(self):
        self.assertEqual(parse_pair("2,1"), Point(2, 1))
        with self.assertRaises(CommandError):
            parse_pair("x")


class CommandTest(TestCase):
    def setUp(self) -> None:
        super(CommandTest, self).setUp()
        self.tmp = tempfile.TemporaryDirectory()
        self.field_path = self.path("field.json")
        self.write("field.json", json.dumps(GF16))

    def tearDown(self) -> None:
        self.tmp.cleanup()
        super(CommandTest, self).tearDown()

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def write(self, name, text):
        with open(self.path(name), "w") as f:
            f.write(text)
        return self.path(name)

    def dispatch(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        code = cmd_dispatch(list(argv), stdout=out, stderr=err)
        return code, out.getvalue(), err.getvalue()

    def test_selftest(self):
        code, out, err = self.dispatch("selftest")
        self.assertEqual(code, 0, err)
        self.assertIn("4/4 examples reproduced", out)

    def test_syndrome_then_bms(self):
        # Given
        syndromes_path = self.path("u.json")
        code, out, err = self.dispatch(
            "syndrome", "--field", self.field_path, "--period", "5,5", "--t", "2", "--tau", "1,1",
            "--error", "X1*X2^2+X1^2*X2^2", "--out", syndromes_path)
        self.assertEqual(code, 0, err)
        # When
        code, out, err = self.dispatch(
            "bms", "--field", self.field_path, "--period", "5,5", "--t", "2", "--in", syndromes_path, "--trace")
        # Then
        self.assertEqual(code, 0, err)
        self.assertIn("(0,2)→ Same", out)
        self.assertIn("Basis: {X1^2+a^2*X1+a^9,X2+a^6}", out)
        self.assertIn("Error: X1^2*X2^2+X1*X2^2", out)

    def test_bms_structured(self):
        syndromes_path = self.path("u.json")
        self.dispatch(
            "syndrome", "--field", self.field_path, "--period", "5,5", "--t", "2", "--tau", "0,0",
            "--error", "X1+X2^3", "--out", syndromes_path)
        code, out, err = self.dispatch(
            "bms", "--field", self.field_path, "--period", "5,5", "--t", "2", "--in", syndromes_path,
            "--format", "structured")
        self.assertEqual(code, 0, err)
        data = json.loads(out)
        self.assertEqual(len(data["delta"]), 2)
        self.assertEqual(data["error"], "X1+X2^3")

    def test_decode(self):
        # Given
        field = create_test_field()
        code_path = self.write("code.json", json.dumps(create_test_code(field).to_config()))
        e = create_test_error(field, "X2^2+X1*X2^3")
        word_path = self.write("word.json", Word.from_polynomial(e, 5, 15).dumps())
        # When
        code, out, err = self.dispatch(
            "decode", "--code", code_path, "--in", word_path, "--t", "2", "--tau", "2,1", "--format", "structured")
        # Then
        self.assertEqual(code, 0, err)
        data = json.loads(out)
        self.assertEqual(data["error"], "X1*X2^3+X2^2")
        self.assertEqual(data["tau"], [2, 1])

    def test_missing_option(self):
        code, out, err = self.dispatch("bms", "--field", self.field_path)
        self.assertEqual(code, 1)
        self.assertIn("--t", err)

    def test_bad_field_file(self):
        path = self.write("bad.json", json.dumps({"p": 2, "m": 4, "poly": [1, 1, 1, 1, 1]}))
        code, out, err = self.dispatch(
            "syndrome", "--field", path, "--period", "5,5", "--t", "2", "--tau", "0,0", "--error", "X1")
        self.assertEqual(code, 1)

    def test_capability_exceeded_is_a_decoding_failure(self):
        # Given u_(0,0) and u_(1,1) alone are nonzero
        entries = [
            {"n": [n[0], n[1]], "v": "a^0" if n in ((0, 0), (1, 1)) else "0"}
            for n in sorted(s_of_t(2))]
        path = self.write("u.json", json.dumps({"tau": [0, 0], "entries": entries}))
        # When
        code, out, err = self.dispatch("bms", "--field", self.field_path, "--t", "2", "--in", path)
        # Then
        self.assertEqual(code, 2)
        self.assertIn("BmsError 1", err)
