import pytest
from hypothesis import given, strategies as st

from lipidscreen.evalkit import EXTREME_SCORES, EvalPair, compute_metrics


def brute_force(pairs):
    """Independent reference: naive loops, no shared helpers."""
    tox_hits = 0
    for p in pairs:
        if p.pred_tox == p.true_tox:
            tox_hits += 1
    eff_n = eff_hit = ext_n = ext_hit = mid_n = mid_hit = 0
    abs_errors = []
    for p in pairs:
        if p.true_tox:
            continue
        eff_n += 1
        correct = p.pred_eff is not None and p.pred_eff == p.true_eff
        if correct:
            eff_hit += 1
        if p.true_eff in (1, 2, 9, 10):
            ext_n += 1
            if correct:
                ext_hit += 1
        else:
            mid_n += 1
            if correct:
                mid_hit += 1
        if p.pred_eff is not None:
            abs_errors.append(abs(p.pred_eff - p.true_eff))
    return {
        "toxic": tox_hits / len(pairs),
        "eff": eff_hit / eff_n if eff_n else None,
        "extreme": ext_hit / ext_n if ext_n else None,
        "middle": mid_hit / mid_n if mid_n else None,
        "mae": sum(abs_errors) / len(abs_errors) if abs_errors else None,
    }


def test_four_pair_worked_example():
    pairs = [
        EvalPair("a", True, True),                                # tox correct
        EvalPair("b", False, False, true_eff=10, pred_eff=10),    # extreme hit
        EvalPair("c", False, False, true_eff=5, pred_eff=7),      # middle miss
        EvalPair("d", False, True, true_eff=2),                   # refused clean
    ]
    m = compute_metrics(pairs)
    assert m.toxic_accuracy == pytest.approx(3 / 4)  # d mispredicted toxic
    assert m.efficiency_accuracy == pytest.approx(1 / 3)
    assert m.extreme_accuracy == pytest.approx(1 / 2)
    assert m.middle_accuracy == 0.0
    assert m.mae == pytest.approx((0 + 2) / 2)
    assert m.sizes == {
        "all": 4, "non_toxic": 3, "extreme": 2, "middle": 1,
        "mae": 2, "refused": 1,
    }


def test_all_toxic_set_has_undefined_efficiency_metrics():
    pairs = [EvalPair(f"t{i}", True, i % 2 == 0) for i in range(4)]
    m = compute_metrics(pairs)
    assert m.efficiency_accuracy is None
    assert m.extreme_accuracy is None
    assert m.middle_accuracy is None
    assert m.mae is None
    assert m.toxic_accuracy == pytest.approx(0.5)
    assert "undefined" in m.summary_row()


def test_refusals_count_as_wrong_but_not_in_mae():
    pairs = [
        EvalPair("a", False, True, true_eff=5),
        EvalPair("b", False, False, true_eff=5, pred_eff=5),
    ]
    m = compute_metrics(pairs)
    assert m.efficiency_accuracy == pytest.approx(0.5)
    assert m.mae == 0.0
    assert m.sizes["refused"] == 1


def test_empty_set_rejected():
    with pytest.raises(ValueError, match="empty"):
        compute_metrics([])


def test_clean_pair_requires_true_score():
    with pytest.raises(ValueError, match="true efficiency"):
        EvalPair("x", False, False)


def test_extreme_set_definition():
    assert EXTREME_SCORES == {1, 2, 9, 10}


pair_strategy = st.builds(
    lambda i, true_tox, pred_tox, true_eff, pred_eff, refused: EvalPair(
        id=f"p{i}",
        true_tox=true_tox,
        pred_tox=pred_tox if not true_tox else pred_tox,
        true_eff=None if true_tox else true_eff,
        pred_eff=None if (true_tox or refused) else pred_eff,
    ),
    i=st.integers(0, 10_000),
    true_tox=st.booleans(),
    pred_tox=st.booleans(),
    true_eff=st.integers(1, 10),
    pred_eff=st.integers(1, 10),
    refused=st.booleans(),
)


@given(st.lists(pair_strategy, min_size=1, max_size=40))
def test_matches_brute_force_oracle(pairs):
    m = compute_metrics(pairs)
    ref = brute_force(pairs)
    for got, want in [
        (m.toxic_accuracy, ref["toxic"]),
        (m.efficiency_accuracy, ref["eff"]),
        (m.extreme_accuracy, ref["extreme"]),
        (m.middle_accuracy, ref["middle"]),
        (m.mae, ref["mae"]),
    ]:
        if want is None:
            assert got is None
        else:
            assert got == pytest.approx(want, abs=1e-12)


@given(st.lists(pair_strategy, min_size=1, max_size=40))
def test_extreme_middle_partition_non_toxic(pairs):
    m = compute_metrics(pairs)
    assert m.sizes["extreme"] + m.sizes["middle"] == m.sizes["non_toxic"]
    assert m.sizes["mae"] + m.sizes["refused"] == m.sizes["non_toxic"]
    # overall efficiency accuracy is the size-weighted mean of the two subsets
    if m.sizes["non_toxic"]:
        weighted = (
            (m.extreme_accuracy or 0.0) * m.sizes["extreme"]
            + (m.middle_accuracy or 0.0) * m.sizes["middle"]
        ) / m.sizes["non_toxic"]
        assert m.efficiency_accuracy == pytest.approx(weighted, abs=1e-12)


def test_summary_row_format():
    pairs = [EvalPair("a", False, False, true_eff=5, pred_eff=5)]
    row = compute_metrics(pairs).summary_row()
    cols = row.split("\t")
    assert len(cols) == 5
    assert cols[0] == "1.0000"
