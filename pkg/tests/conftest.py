from pathlib import Path

import pytest

from hecke_gram.polymatrix import read_matrix
from hecke_gram.wgraph import CoxeterSystem, WGraph

DATA = Path(__file__).parent / "data"
PKG_DATA = Path(__file__).parent.parent / "src" / "hecke_gram" / "data"

# (W-graph fixture, Coxeter type)
FIXTURES = [
    ("A1_reflection", "A1"),
    ("A2_reflection", "A2"),
    ("A3_reflection", "A3"),
    ("B2_reflection", "B2"),
    ("E6_reflection", "E6"),
    ("A2_sign", "A2"),
    ("A2_index", "A2"),
    ("E6_10s", "E6"),
]


def load_wgraph(name: str) -> WGraph:
    return WGraph.read(PKG_DATA / f"{name}.wgraph")


def load_coxeter(name: str) -> CoxeterSystem:
    return CoxeterSystem.read(PKG_DATA / f"{name}.coxeter")


def load_golden(name: str):
    return read_matrix(DATA / f"e6_10s_{name}.txt")


@pytest.fixture(scope="session")
def e6_10s():
    return load_wgraph("E6_10s"), load_coxeter("E6")


@pytest.fixture(scope="session")
def rescaled_samples():
    rows = [ln.split() for ln in (DATA / "rescaled_samples.txt").read_text().splitlines() if ln.strip()]
    return [int(b) for b, _ in rows], [int(v) for _, v in rows]


# (number, title, passed, seconds, detail) per acceptance criterion, filled by test_acceptance
ACCEPTANCE: list[tuple[int, str, bool, float, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, title, ok, secs, detail in sorted(ACCEPTANCE):
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title} ({secs:.2f}s)"
        terminalreporter.write_line(line + (f" -- {detail}" if detail else ""))
