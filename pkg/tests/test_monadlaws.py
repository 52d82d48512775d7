from __future__ import annotations

import pytest

from effcat.laws import FAIL, PASS, run_laws
from effcat.monadlaws import monad_laws, verify_monad_laws

from conftest import make


@pytest.mark.parametrize("tag", ["error", "partiality", "list", "multiset", "powerset"])
def test_monad_laws_pass(tag):
    report = verify_monad_laws(make(tag))
    assert report.status() == PASS
    assert report.entry("monad-associativity").cases_checked > 0


def test_monad_laws_at_size_three():
    report = verify_monad_laws(make("error", sizes=(("B", 3),)))
    assert report.status() == PASS


def test_state_has_only_kleisli_laws():
    inst = make("state")
    ids = {law.law_id for law in monad_laws(inst)}
    assert "monad-left-unit" not in ids and "kleisli-associativity" in ids
    report = run_laws("m", inst, monad_laws(inst),
                      only=["kleisli-left-identity", "pure-functoriality", "mono-requirement"])
    assert report.status() == PASS


def test_relabelled_composition_is_caught():
    inst = make("list", mutant="compose-relabel")
    report = run_laws("m", inst, monad_laws(inst), only=["kleisli-left-identity"])
    assert report.entries[0].verdict == FAIL
