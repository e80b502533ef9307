import pytest

import imprint


def test_pairwise_intersection():
    both = imprint.cover("abc", "at", ["b+|c+", "c+|a+"], target="a+|b+", emit_cover=True, verify=True)
    assert both["coverable"]
    assert both["verification"]["separating"]
    assert len(both["cover"]["pieces"]) == 2
    single = imprint.cover("abc", "at", ["b+|c+"], target="a+|b+")
    assert not single["coverable"]
    assert [0] in single["noncoverable_subsets"]


def test_three_language_imprint():
    dump = imprint.imprint("at", "abc", ["(ab)+", "b(ab)+", "c(ac)+"], chain=True)
    assert dump["imprint"] == [[], [0], [0, 1], [1], [2]]
    assert all(dump["chain"].values())


def test_separate_and_member():
    v = imprint.separate("sigma1", "ab", "a+", "b+")
    assert v["coverable"]
    assert v["separator"]
    assert imprint.member("bsigma1", "ab", "(aa)*")["member"] is False
    assert imprint.member("at", "ab", "b*")["member"] is True


def test_oracles():
    assert imprint.oracle("pt-k", "ab", 1)["classes"] == 4
    assert imprint.oracle("sigma1-sep", "ab", "a+", "b+")["separable"]


def test_automaton_input():
    nfa = {"alphabet": "ab", "states": 1, "initials": [0], "finals": [0], "transitions": [[0, "a", 0]]}
    assert imprint.member("at", "ab", nfa)["member"] is True


def test_errors():
    with pytest.raises(imprint.InputError):
        imprint.separate("at", "ab", "(a", "b")
    with pytest.raises(ValueError):
        imprint.imprint("at", "ab", [])
    with pytest.raises(imprint.CapExceeded):
        imprint.cover("ab", "fo", ["(ab)*", "(aa)*"], max_elements=1)
