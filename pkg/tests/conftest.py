from hypothesis import HealthCheck, settings, strategies as st

from qs135.quaternion import Quat

settings.register_profile(
    "default", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

coord = st.integers(min_value=-10**6, max_value=10**6)
quats = st.builds(Quat, coord, coord, coord, coord)
small_quats = st.builds(*(Quat,) + tuple(st.integers(-30, 30) for _ in range(4)))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
