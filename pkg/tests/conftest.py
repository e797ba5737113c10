from hypothesis import settings

# property tests draw from a fixed seed so every run sees the same instances
settings.register_profile("seeded", derandomize=True, database=None)
settings.load_profile("seeded")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
