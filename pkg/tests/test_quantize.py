import copy
from fractions import Fraction

import pytest

from propquant import lba
from propquant.associator import solve_associator
from propquant.errors import PropError, TruncationExceeded
from propquant.families import source_state
from propquant.quantize import (
    HState,
    QuantizeConfig,
    QuantizedHopf,
    _sym_identity,
    source_cells,
    verify_stored,
)
from propquant.signatures import load_preset


def test_source_cells():
    assert list(source_cells(0, 3)) == [()]
    assert len(list(source_cells(2, 3))) == 10
    assert len(list(source_cells(3, 3))) == 20


def test_every_hopf_axiom_vanishes(hopf):
    rep = hopf.report
    names = {e.axiom for e in rep.entries}
    assert names == {n for n, _, _ in load_preset("HA").equations}
    assert rep.ok, [(e.axiom, e.cell) for e in rep.failures()]
    assert ("assoc", (1, 1, 1)) in {(e.axiom, e.cell) for e in rep.entries}


@pytest.mark.parametrize("cell", [(1, 1), (0, 1), (1, 0), (2, 1), (1, 2)])
def test_twist_is_one_plus_half_r(hopf, cell):
    assert hopf.twist_anchor_residual(cell).is_zero()


def test_classical_product_is_sym_plus_half_bracket(hopf):
    st = hopf.classical_part(hopf.product, (1, 1))
    assert set(st.comps) == {(1,), (2,)}
    assert st.comps[(2,)] == _sym_identity((1, 1), (2,))
    assert st.comps[(1,)] == lba.bracket().scale(Fraction(1, 2))


def test_classical_coproduct_is_primitive_on_generators(hopf):
    st = hopf.classical_part(hopf.coproduct, (1,))
    assert set(st.comps) == {(1, 0), (0, 1)}
    assert all(e == lba.identity(1) for e in st.comps.values())


def test_classical_limit_recovers_cobracket(hopf):
    assert not hopf.classical_limit()


def test_bigrading_scan(hopf):
    assert hopf.h_states
    assert not hopf.check_bigrading()


def test_bigrading_scan_catches_injected_defect(hopf):
    key = next(k for k, h in hopf.h_states.items() if 1 in h.parts)
    hst = hopf.h_states[key]
    shifted = HState(hst.slots, hst.m, {0: hst.parts[1]})
    assert shifted.bigrading_defects()
    H2 = copy.copy(hopf)
    H2.h_states = dict(hopf.h_states)
    H2.h_states[key] = hst + shifted
    assert H2.check_bigrading()


def test_corrupted_twist_breaks_coassociativity(associator):
    H = QuantizedHopf(associator.phi, QuantizeConfig(2, 2))
    H.twist_corruption = Fraction(1, 3)
    rep = H.check_hopf(D=2, axioms=["coassoc"])
    bad = {e.cell for e in rep.failures()}
    assert bad and bad <= {(1,), (2,)}


def test_stored_structure_round_trip(hopf):
    obj = hopf.to_json(3, hopf.report)
    rep = verify_stored(obj, axioms=["coassoc", "counit_l", "unit_l"])
    checked = [e for e in rep.entries if e.checked]
    assert checked and all(e.ok for e in checked)
    comp = next(c for c in obj["families"]["Delta"]["components"] if c["in"] == [1] and c["elem"]["terms"])
    comp["elem"]["terms"][0][2] = str(Fraction(comp["elem"]["terms"][0][2]) + 1)
    rep = verify_stored(obj, axioms=["counit_l"])
    assert not rep.ok


def test_config_errors(associator):
    with pytest.raises(TruncationExceeded):
        QuantizedHopf(solve_associator(1).phi, QuantizeConfig(2, 3))
    with pytest.raises(PropError):
        QuantizedHopf(associator.phi, QuantizeConfig(2, 1))


def test_states_are_on_the_right_slots(hopf):
    st = source_state(("M", "M"), (1, 1))
    assert st.slots == ("M", "M")
