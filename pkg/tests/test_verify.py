"""Self-verification battery: completeness and sensitivity."""

from mdi_sarg04.verify import all_passed, verify_suite


class TestVerifySuite:
    def test_all_checks_pass(self):
        checks = verify_suite()
        failed = [c.name for c in checks if not c.passed]
        assert not failed, f"failing checks: {failed}"
        assert all_passed(checks)

    def test_at_least_twelve_named_checks(self):
        checks = verify_suite()
        names = {c.name for c in checks}
        assert len(names) == len(checks) >= 12

    def test_angle_perturbation_breaks_proportionality(self):
        checks = verify_suite(angle_offset=1e-3)
        by_name = {c.name: c for c in checks}
        assert not by_name["povm_11_type1_phase_is_1p5_bit"].passed
        assert not all_passed(checks)
