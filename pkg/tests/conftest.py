from test_acceptance import ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if not lines:
        return
    grouped: dict[str, list[tuple[str, str]]] = {}
    for line in lines:
        status, rest = line.split(" ", 1)
        head, detail = rest.split(": ", 1)
        grouped.setdefault(head, []).append((status, detail))
    terminalreporter.section("acceptance criteria")
    for head, items in sorted(grouped.items(), key=lambda kv: int(kv[0].split()[1])):
        status = "PASS" if all(s == "PASS" for s, _ in items) else "FAIL"
        terminalreporter.write_line(f"{status} {head}: " + "; ".join(d for _, d in items))
