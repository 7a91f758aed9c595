from __future__ import annotations

import functools

import pytest
from hypothesis import HealthCheck, settings

from linres.groebner import initial_ideal
from linres.polycore import MonomialOrder
from linres.presets import load_preset
from linres.rees import rees_presentation

settings.register_profile(
    "linres", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("linres")

# test_acceptance appends (criterion, passed, detail) here
ACCEPTANCE: list = []


@functools.lru_cache(maxsize=None)
def preset_ideal(name: str):
    return load_preset(name).ideal()


@functools.lru_cache(maxsize=None)
def presentation(name: str, kind: str = "degrevlex", prec: str = "xt"):
    order = MonomialOrder(kind, prec)
    return rees_presentation(preset_ideal(name).reorder(order), order)


@functools.lru_cache(maxsize=None)
def initial_of_p(name: str, kind: str = "degrevlex", prec: str = "xt"):
    order = MonomialOrder(kind, prec)
    return initial_ideal(presentation(name, kind, prec).ideal(), order)


@pytest.fixture(scope="session")
def J():
    return preset_ideal("terai-J")


@pytest.fixture(scope="session")
def J1():
    return preset_ideal("conca-J1")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, ok, detail in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {crit}: {detail}")
