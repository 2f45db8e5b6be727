import pytest

from semigroup_absolute import golden
from semigroup_absolute.presentation import normalize, parse_presentation


def pres(text):
    return normalize(parse_presentation(text))


@pytest.fixture(scope="session")
def load():
    cache = {}

    def _load(name):
        if name not in cache:
            cache[name] = golden.load(name)
        return cache[name]

    return _load


# criterion id -> list of (ok, detail); filled by test_acceptance
ACCEPTANCE: dict[str, list[tuple[bool, str]]] = {}


def record(criterion: str, ok: bool, detail: str = "") -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")

    def order(key):
        head = key.split()[0]
        return (int(head) if head.isdigit() else 99, key)

    for key in sorted(ACCEPTANCE, key=order):
        runs = ACCEPTANCE[key]
        ok = all(r[0] for r in runs)
        failing = [d for good, d in runs if not good]
        detail = "; ".join(failing) if failing else "; ".join(d for _, d in runs if d)
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
