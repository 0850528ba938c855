"""Symbolic spectral-sequence pages, rewrites and assembled tables."""

import pytest

from chowkit.spectral import (
    Atom,
    CyclicGroup,
    E2Page,
    HigherDifferentialError,
    NZ,
    PowerSubN,
    SumGroup,
    UnresolvableDifferentialError,
    WeightOutOfRangeError,
    Z,
    ZERO,
    apply_d2,
    assemble,
    build_e2,
    cech_group,
    cyclic,
    direct_sum,
    Differential,
    render_group,
    weight_table,
)
from chowkit.tate import NotPrimeError


# -- group expressions ---------------------------------------------------------


def test_direct_sum_normalization():
    assert direct_sum([]) == ZERO
    assert direct_sum([ZERO, Z]) == Z
    flat = direct_sum([Z, direct_sum([Atom("F*"), Z])])
    assert flat == SumGroup((Z, Atom("F*"), Z))


def test_cyclic_one_is_zero():
    assert cyclic(1) == ZERO
    assert cyclic(3) == CyclicGroup(3)


def test_rendering():
    assert render_group(NZ) == "nZ"
    assert render_group(PowerSubN(Atom("F*"))) == "(F*)^n"
    assert render_group(direct_sum([Z, PowerSubN(Atom("F*"))])) == "Z + (F*)^n"


def test_cech_table_entries():
    assert cech_group(3, 0, 0) == Z
    assert cech_group(3, 1, 0) == ZERO
    assert cech_group(3, 1, 1) == Atom("F*")
    assert cech_group(3, 3, 1) == CyclicGroup(3)
    assert cech_group(3, 2, 2) == Atom("H^{2,2}(F)")
    assert cech_group(3, 4, 2) == Atom("K1(F)/n[A]")
    with pytest.raises(ValueError):
        cech_group(3, 0, 3)


# -- page construction ------------------------------------------------------------


def test_weight_one_single_cell():
    page = build_e2(3, 1)
    assert page.cells == {(0, 1): Z}
    assert page.differentials == ()


def test_weight_two_grid_and_differential():
    page = build_e2(3, 2)
    assert page.cells == {(1, 1): Atom("F*"), (3, 1): CyclicGroup(3), (1, 2): Z}
    assert len(page.differentials) == 1
    diff = page.differentials[0]
    assert (diff.source, diff.target) == ((1, 2), (3, 1))
    assert diff.factor == 1
    assert diff.label() == "1*c*[A]"


def test_weight_three_differentials():
    page = build_e2(3, 3)
    arrows = {(d.source, d.target): d.factor for d in page.differentials}
    assert arrows == {((2, 2), (4, 1)): 1, ((2, 3), (4, 2)): 2}


def test_support_is_within_weight():
    for n in (2, 3, 5):
        for j in (1, 2, 3):
            for (p, q) in build_e2(n, j).support():
                assert 0 < q <= j


def test_build_input_validation():
    with pytest.raises(WeightOutOfRangeError):
        build_e2(3, 4)
    with pytest.raises(NotPrimeError):
        build_e2(4, 2)


# -- rewrite rules ------------------------------------------------------------------


def test_apply_d2_weight_two():
    page = apply_d2(build_e2(3, 2))
    assert page.cells == {(1, 1): Atom("F*"), (1, 2): NZ}
    assert page.differentials == ()


def test_apply_d2_weight_three_kernels():
    page = apply_d2(build_e2(3, 3))
    assert page.cell(2, 2) == PowerSubN(Atom("F*"))
    assert page.cell(2, 3) == NZ
    assert page.cell(4, 1) == ZERO
    assert page.cell(4, 2) == ZERO


def test_zero_differential_passthrough():
    page = build_e2(3, 1)
    assert apply_d2(page).cells == page.cells


def test_unresolvable_differential():
    synthetic = E2Page(3, 2, {(0, 2): CyclicGroup(3), (2, 1): CyclicGroup(3)},
                       (Differential((0, 2), (2, 1), 1, "c"),))
    with pytest.raises(UnresolvableDifferentialError):
        apply_d2(synthetic)


# -- assembly ------------------------------------------------------------------------


def test_assemble_weight_tables():
    assert weight_table(3, 1) == {1: Z}
    assert weight_table(3, 2) == {2: Atom("F*"), 3: NZ}
    assert weight_table(3, 3) == {
        1: Atom("H^{0,2}(F)"),
        2: Atom("H^{1,2}(F)"),
        3: Atom("H^{2,2}(F)"),
        4: direct_sum([Z, PowerSubN(Atom("F*"))]),
        5: NZ,
    }


def test_assembly_requires_resolved_page():
    with pytest.raises(ValueError):
        assemble(build_e2(3, 2))


def test_assembly_summand_order():
    table = weight_table(3, 3)
    assert render_group(table[4]) == "Z + (F*)^n"


def test_unit_invariance():
    for j in (1, 2, 3):
        assert weight_table(3, j, unit="c") == weight_table(3, j, unit="c'")


def test_round_trip_idempotence():
    first = weight_table(3, 3)
    second = weight_table(3, 3)
    assert first == second


def test_higher_differential_guard():
    synthetic = E2Page(3, 3, {(0, 3): Z, (3, 1): CyclicGroup(3)}, ())
    with pytest.raises(HigherDifferentialError):
        assemble(synthetic)


def test_degree_two_engine_runs():
    # The engine is generic over the prime; degree 2 assembles its own table.
    table = weight_table(2, 2)
    assert table == {2: Atom("F*"), 3: NZ}
