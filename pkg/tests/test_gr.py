from pathlib import Path

import pytest

from paramspace.errors import SearchCapExceeded
from paramspace.gr import (
    ColoringAssignment,
    GRInstance,
    append_result,
    default_alphabet,
    find_witness,
    minimal_n,
    monochromatic_compose,
    pull_back,
    result_line,
    verify_gr,
)
from paramspace.words import GRAPH_ALPHABET, identity_word, words_up_to


def test_one_step_counterexample():
    res = verify_gr(1, 0, 1, 2, 1)
    assert res.verdict is False and res.exhaustive
    chi = res.counterexample
    assert chi(()) != chi(("0",))


def test_two_steps_suffice():
    res = verify_gr(1, 0, 1, 2, 2, keep_witnesses=True)
    assert res.verdict is True and res.searched == 8
    assert len(res.witnesses) == 8
    assert "mode=exhaustive" in res.summary()


def test_minimal_values():
    assert minimal_n(1, 0, 1, 2, method="enumerate")[0] == 2
    assert minimal_n(1, 1, 1, 1)[0] == 1
    N, history = minimal_n(2, 0, 1, 2)
    assert N == 3
    assert [res.verdict for _, res in history] == [False, False, True]


def test_two_letters_three_steps_both_methods():
    assert verify_gr(2, 0, 1, 2, 3, method="enumerate").searched == 2**15
    assert verify_gr(2, 0, 1, 2, 3, method="enumerate").verdict
    assert not verify_gr(2, 0, 1, 2, 2, method="backtrack").verdict


def test_trivial_when_n_equals_k():
    for sigma, k, r in ((1, 0, 3), (2, 1, 2), (1, 2, 2)):
        assert verify_gr(sigma, k, k, r, k, method="backtrack").verdict


@pytest.mark.parametrize("params", [(1, 0, 1, 2), (1, 1, 2, 2), (2, 0, 1, 2), (1, 0, 1, 3)])
def test_methods_agree(params):
    for N in range(params[2], 4):
        try:
            a = verify_gr(*params, N, method="enumerate", cap=2**16)
        except SearchCapExceeded:
            continue
        b = verify_gr(*params, N, method="backtrack")
        assert a.verdict == b.verdict
        if b.counterexample is not None:
            inst = GRInstance.build(params[0], params[1], params[2], N)
            assert find_witness(inst, b.counterexample) is None


def test_caps():
    with pytest.raises(SearchCapExceeded):
        verify_gr(2, 0, 1, 2, 4, method="enumerate", cap=100)
    with pytest.raises(SearchCapExceeded):
        verify_gr(2, 0, 1, 2, 3, method="backtrack", cap=10)
    with pytest.raises(ValueError):
        verify_gr(1, 0, 1, 0, 2)


def test_sampling_is_labelled():
    res = verify_gr(1, 0, 1, 2, 2, method="sample", samples=50)
    assert res.verdict is None and not res.exhaustive
    assert "non-exhaustive" in res.summary()
    res = verify_gr(1, 0, 1, 2, 1, method="sample", samples=50, seed=1)
    assert res.verdict is False


def test_witness_order():
    inst = GRInstance.build(1, 0, 1, 2)
    chi = ColoringAssignment.from_list(inst.domain, [0, 0, 1])
    assert find_witness(inst, chi) == (0,)
    chi = ColoringAssignment.from_list(inst.domain, [0, 1, 0])
    assert find_witness(inst, chi) == (0, "0")


def test_pull_back_laws():
    dom = words_up_to(GRAPH_ALPHABET, 2, 0)
    chi = ColoringAssignment.from_list(dom, [0, 1, 1])
    assert pull_back(chi, identity_word(2), dom) == chi
    const = ColoringAssignment.from_list(dom, [2, 2, 2])
    assert pull_back(const, ("0", 0), words_up_to(GRAPH_ALPHABET, 1, 0)).is_constant()


def test_compose_end_to_end():
    inst = GRInstance.build(1, 0, 1, 2)
    vertex_copies = words_up_to(GRAPH_ALPHABET, 1, 0)
    for colours in ([0, 1, 0], [1, 1, 0], [0, 1, 1]):
        chi = ColoringAssignment.from_list(inst.domain, colours)
        W = find_witness(inst, chi)
        assert monochromatic_compose(chi, W, vertex_copies).is_constant()


def test_colouring_must_be_total():
    with pytest.raises(ValueError):
        ColoringAssignment(((), ("0",)), {(): 0})
    assert str(ColoringAssignment.from_list([(), ("0",)], [0, 1])) == "@empty:0 0:1"


def test_results_ledger(tmp_path):
    res = verify_gr(1, 0, 1, 2, 2)
    line = result_line("verify", 1, 0, 1, 2, 2, res)
    path = tmp_path / "sub" / "results.txt"
    append_result(path, line)
    append_result(path, line)
    assert path.read_text().splitlines() == [line, line]
    assert line == "verify sigma=1 k=0 n=1 r=2 N=2 verdict=true mode=exhaustive searched=8 colourings"


def test_default_alphabet():
    assert default_alphabet(2).symbols == "01"
    with pytest.raises(ValueError):
        default_alphabet(0)


def test_recorded_two_letter_result():
    lines = (Path(__file__).parents[1] / "results" / "gr_results.txt").read_text().splitlines()
    assert "minimal sigma=2 k=0 n=1 r=2 N=3" in lines
    assert minimal_n(2, 0, 1, 2, method="enumerate")[0] == 3
