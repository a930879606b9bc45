from pathlib import Path

import pytest

from punforge.homophones import parse_homophone_base
from punforge.lexicon import parse_lexicon
from punforge.pipeline import KnowledgeBase, data_path

FIXTURES = Path(__file__).parent / "fixtures"

# criterion number -> (passed, description); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def load_kb(name: str) -> KnowledgeBase:
    if name == "demo":
        return KnowledgeBase.load(data_path("demo.lex"), data_path("demo.hom"))
    return KnowledgeBase.load(FIXTURES / f"{name}.lex", FIXTURES / f"{name}.hom")


@pytest.fixture(scope="session")
def worked_kb() -> KnowledgeBase:
    return load_kb("worked")


@pytest.fixture(scope="session")
def loop_kb() -> KnowledgeBase:
    return load_kb("worked_loop")


@pytest.fixture(scope="session")
def coke_kb() -> KnowledgeBase:
    return load_kb("coke")


@pytest.fixture(scope="session")
def demo_kb() -> KnowledgeBase:
    return load_kb("demo")


@pytest.fixture(scope="session")
def worked_lexicon():
    return parse_lexicon((FIXTURES / "worked.lex").read_text())


@pytest.fixture(scope="session")
def worked_base(worked_lexicon):
    return parse_homophone_base((FIXTURES / "worked.hom").read_text(), worked_lexicon)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {n}: {text}")
