import unittest

from ..parameterpath import (
    ParameterPathParser,
    StepKind,
)
from ...exceptions import ConfigError


class TestParameterPathParser(unittest.TestCase):
    def setUp(self):
        self.document = {
            "device": {"qubit1": {"omega": 1.0}},
            "drive": {"tones": [{"amplitude": 0.1}, {"amplitude": 0.2}, {"amplitude": 0.3}]},
        }

    def test_dotted_path(self):
        result = ParameterPathParser("device.qubit1.omega").parse()
        self.assertEqual(
            result.steps,
            [(StepKind.KEY, "device"), (StepKind.KEY, "qubit1"), (StepKind.KEY, "omega")])
        self.assertEqual(result.get(self.document), 1.0)

    def test_indexed_path(self):
        result = ParameterPathParser("drive.tones[2].amplitude").parse()
        self.assertEqual(result.steps[2], (StepKind.INDEX, 2))
        self.assertEqual(result.get(self.document), 0.3)

    def test_set(self):
        result = ParameterPathParser("drive.tones[0].amplitude").parse()
        result.set(self.document, 0.05)
        self.assertEqual(self.document["drive"]["tones"][0]["amplitude"], 0.05)

    def test_missing_field(self):
        result = ParameterPathParser("device.qubit2.omega").parse()
        with self.assertRaises(ConfigError) as context:
            result.get(self.document)
        self.assertEqual(context.exception.field_path, "device.qubit2")

    def test_set_does_not_create(self):
        result = ParameterPathParser("device.qubit1.alpha").parse()
        self.assertRaises(ConfigError, result.set, self.document, 0.2)

    def test_index_out_of_range(self):
        result = ParameterPathParser("drive.tones[5].amplitude").parse()
        self.assertRaises(ConfigError, result.get, self.document)

    def test_malformed(self):
        for spec in ("", ".omega", "drive.tones[x]", "drive.tones[1", "device..omega"):
            self.assertRaises(ConfigError, ParameterPathParser(spec).parse)
