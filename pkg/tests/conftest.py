from hypothesis import settings

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

# (criterion number, part) -> (description, passed); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, part in sorted(ACCEPTANCE):
        desc, ok = ACCEPTANCE[number, part]
        label = f"{number}{' (' + part + ')' if part else ''}"
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {desc}")
