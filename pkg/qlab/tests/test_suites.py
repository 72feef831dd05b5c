from django.test import SimpleTestCase, override_settings

from qlab.errors import LimitExceeded, OutOfRange
from qlab.reports import FAIL, PASS, SKIP, SuiteReport, bool_check
from qlab.suites import SUITE_NAMES, SUITES, SuiteRunner, run_suite, suite_parameters


def failing(report):
    return [(c.name, c.witness) for c in report.checks if c.status == FAIL]


class SuiteRunnerTests(SimpleTestCase):
    def setUp(self):
        self.report = SuiteReport("sample", {})
        self.run = SuiteRunner(self.report)

    def test_checks_are_added_in_order(self):
        self.run.group("two", lambda: [bool_check("a", True), bool_check("b", True)])
        self.assertEqual([c.name for c in self.report.checks], ["a", "b"])

    def test_library_error_becomes_a_failure(self):
        def broken():
            raise OutOfRange("index 7 outside 0..3")

        self.run.group("broken group", broken)
        check, = self.report.checks
        self.assertEqual((check.name, check.status, check.witness), ("broken group", FAIL, "index 7 outside 0..3"))
        self.assertFalse(self.report.passed)

    def test_limit_becomes_a_skip(self):
        def capped():
            raise LimitExceeded("things", 10, 5)

        self.run.group("capped group", capped)
        self.assertEqual([c.status for c in self.report.checks], [SKIP])
        self.assertTrue(self.report.passed)


class RunSuiteTests(SimpleTestCase):
    def test_names(self):
        self.assertEqual(SUITE_NAMES[-1], "all")
        self.assertEqual(len(SUITE_NAMES), len(SUITES) + 1)
        with self.assertRaises(KeyError):
            run_suite("nonsense")

    @override_settings(QLAB_DEFAULT_N=4, QLAB_DEFAULT_Q=3)
    def test_parameters_fall_back_to_settings(self):
        parameters = suite_parameters(d=1)
        self.assertEqual((parameters["n"], parameters["d"], parameters["q"]), (4, 1, 3))
        self.assertIsNone(parameters["limit"])

    def test_quotient(self):
        report = run_suite("quotient", n=2, q=2)
        self.assertTrue(report.passed, failing(report))
        self.assertTrue(all(c.status == PASS for c in report.checks))

    def test_lattice(self):
        report = run_suite("lattice-uq", n=2, q=3)
        self.assertTrue(report.passed, failing(report))
        self.assertEqual(report.data["vertices"], 6)

    def test_unsupported_field_is_skipped(self):
        report = run_suite("quotient", n=2, q=6)
        self.assertEqual([c.status for c in report.checks], [SKIP])
        self.assertIn("6", report.checks[0].reason)
        self.assertTrue(report.passed)

    def test_empty_cube(self):
        report = run_suite("hamming", n=0)
        self.assertEqual([c.status for c in report.checks], [SKIP])
        self.assertIn("N >= 1", report.checks[0].reason)
        report = run_suite("cube-tensor", n=0, q=2)
        self.assertEqual(report.checks[-1].name, "t=0 specialisation")
        self.assertEqual(report.checks[-1].status, SKIP)

    def test_limit_is_a_skip(self):
        report = run_suite("dualpolar-drg", d=3, q=2, limit=50)
        self.assertEqual([c.status for c in report.checks], [SKIP])

    def test_hamming(self):
        report = run_suite("hamming", n=3)
        self.assertTrue(report.passed, failing(report))
        self.assertEqual(report.data["intersection_array"], {"b": [3, 2, 1], "c": [1, 2, 3], "a": [0, 0, 0, 0]})

    def test_dual_polar(self):
        report = run_suite("dualpolar-drg", d=2, q=2)
        self.assertTrue(report.passed, failing(report))
        self.assertEqual(report.data["vertices"], 15)
        self.assertEqual(report.data["printed_vertex_count"], 45)
        self.assertEqual(report.data["spectrum"], {"6": "1", "1": "9", "-3": "5"})
        self.assertEqual(report.data["ttr2_brackets"],
                         {"symmetric_bracket_holds": False, "predicted_valency": "5", "valency": 6})

    def test_dual_q_krawtchouk(self):
        report = run_suite("dualpolar-dqk", d=2, q=3)
        self.assertTrue(report.passed, failing(report))
        self.assertEqual(report.data["convention"], "reflected")

    def test_scheme(self):
        report = run_suite("scheme", n=2, d=1, q=2)
        self.assertTrue(report.passed, failing(report))
        self.assertEqual(set(report.data["schemes"]), {"H(2,2)", "C_1(2)"})
        self.assertTrue(all(c.name.startswith(("H(2,2): ", "C_1(2): ")) for c in report.checks))

    def test_dual_polar_scheme_spectrum(self):
        report = run_suite("scheme", n=2, d=2, q=2)
        self.assertTrue(report.passed, failing(report))
        spectrum, = [c for c in report.checks if c.name == "C_2(2): A_1 spectrum with idempotent-trace multiplicities"]
        self.assertEqual(spectrum.status, PASS)
        self.assertEqual(report.data["schemes"]["C_2(2)"]["multiplicities"], ["1", "9", "5"])

    def test_ws_decomposition(self):
        report = run_suite("ws-decomp", d=1, q=3)
        self.assertTrue(report.passed, failing(report))
        self.assertEqual(report.data["census"], {"rank=0,eps=1": 1, "rank=1,eps=0": 2})

    def test_all(self):
        report = run_suite("all", n=2, d=1, q=2)
        self.assertTrue(report.passed, failing(report))
        self.assertEqual(set(report.data), set(SUITES))
        self.assertTrue(all(c.name.split("/")[0] in SUITES for c in report.checks))

    def test_reports_are_deterministic(self):
        first = run_suite("hamming", n=2).to_json()
        second = run_suite("hamming", n=2).to_json()
        self.assertEqual(first, second)
        self.assertNotIn("seconds", first)
        self.assertIn("seconds", run_suite("hamming", n=2).to_json(timings=True))
