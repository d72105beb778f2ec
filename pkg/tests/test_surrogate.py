import numpy as np
import pytest

from lipidscreen import surrogate, trace
from lipidscreen.chem import fingerprint_smiles
from lipidscreen.dataset import LipidRecord


def rec(id, smiles, toxic=False, score=None):
    return LipidRecord(
        id=id, smiles=smiles, source_study="s", toxic=toxic,
        efficiency_score=score,
    )


def tiny_records():
    """Eight separable molecules: four scored motifs, four toxic."""
    clean = [
        rec("c1", "CCN(C)COCOCCCC", score=1),
        rec("c2", "CCN(C)CNCNCCCC", score=4),
        rec("c3", "CCN(C)CC(=O)OCCCC", score=7),
        rec("c4", "CCN(C)CC(=N)NCCCC", score=10),
    ]
    toxic = [
        rec(f"t{i}", "OCCN" + "C" * i + "C(Cl)(Cl)Cl", toxic=True)
        for i in range(1, 5)
    ]
    return clean + toxic


def tiny_config(**over):
    kw = dict(lr=0.1, epochs=150, batch_size=8, seed=0, hidden=(32, 16),
              eval_every=10, radius=2, nbits=256)
    kw.update(over)
    return surrogate.TrainConfig(**kw)


class TestTrain:
    def test_overfits_separable_set(self):
        recs = tiny_records()
        ckpt, history = surrogate.train(recs, recs, tiny_config())
        assert ckpt.val_toxic_accuracy == 1.0
        assert ckpt.val_efficiency_accuracy == 1.0
        assert history[-1]["train_loss"] < history[0]["train_loss"]

    def test_deterministic(self):
        recs = tiny_records()
        a, _ = surrogate.train(recs, recs, tiny_config(epochs=20))
        b, _ = surrogate.train(recs, recs, tiny_config(epochs=20))
        for name in ("W1", "b1", "W2", "b2", "W3", "b3"):
            assert (getattr(a.params, name) == getattr(b.params, name)).all()

    def test_alpha_zero_leaves_efficiency_head_untouched(self):
        recs = tiny_records()
        cfg = tiny_config(alpha=0.0, epochs=10)
        ckpt, _ = surrogate.train(recs, recs, cfg)
        init = surrogate.init_params(cfg.nbits, cfg.hidden, cfg.seed)
        # zero efficiency gradient: the ten efficiency output columns never move
        assert (ckpt.params.W3[:, 1:] == init.W3[:, 1:]).all()
        assert (ckpt.params.b3[1:] == init.b3[1:]).all()
        # while the toxicity column does
        assert not (ckpt.params.W3[:, 0] == init.W3[:, 0]).all()

    def test_empty_train_set_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            surrogate.train([], [], tiny_config())

    def test_clean_record_without_score_rejected(self):
        recs = [rec("a", "CCO")]
        with pytest.raises(ValueError, match="efficiency score"):
            surrogate.train(recs, [], tiny_config())

    def test_history_length_and_eval_cadence(self):
        recs = tiny_records()
        _, history = surrogate.train(recs, recs, tiny_config(epochs=12, eval_every=5))
        assert len(history) == 12
        evaluated = [h["epoch"] for h in history if "val_toxic_accuracy" in h]
        assert evaluated == [5, 10, 12]


class TestForward:
    def test_hand_built_identity_like_net(self):
        nbits = 256
        params = surrogate.MlpParams(
            W1=np.zeros((nbits, 2)), b1=np.array([1.0, -1.0]),
            W2=np.eye(2), b2=np.zeros(2),
            W3=np.zeros((2, 11)), b3=np.arange(11, dtype=float),
        )
        # relu kills the -1 unit; W3 is zero so the output is exactly b3
        fp = fingerprint_smiles("CCO", radius=2, nbits=nbits)
        z_tox, z_eff = surrogate.forward(params, fp)
        assert z_tox == 0.0
        assert (z_eff == np.arange(1, 11, dtype=float)).all()

    def test_input_dim_mismatch(self):
        params = surrogate.init_params(256, (8, 4), seed=0)
        with pytest.raises(ValueError, match="input dim"):
            surrogate.forward_batch(params, np.zeros((1, 512)))

    def test_batch_matches_single(self):
        params = surrogate.init_params(256, (8, 4), seed=1)
        fp = fingerprint_smiles("CCN(C)CC", radius=2, nbits=256)
        z_tox, z_eff = surrogate.forward(params, fp)
        bt, be = surrogate.forward_batch(params, fp.bits.astype(float)[None, :])
        assert z_tox == bt[0]
        assert (z_eff == be[0]).all()


@pytest.fixture(scope="module")
def trained():
    recs = tiny_records()
    ckpt, _ = surrogate.train(recs, recs, tiny_config())
    return ckpt


class TestPredict:
    def test_clean_prediction_fields(self, trained):
        fp = fingerprint_smiles("CCN(C)CC(=N)NCCCC", radius=2, nbits=256)
        out = surrogate.predict(trained.params, fp)
        assert not out.y_tox
        assert out.y_eff == 10
        assert 0.0 <= out.conf <= 1.0
        assert len(out.p_eff) == 10
        assert abs(sum(out.p_eff) - 1.0) < 1e-9
        parsed = trace.parse_trace(out.r_pred)
        assert parsed["score"] == out.y_eff
        assert parsed["confidence"] == pytest.approx(out.conf, abs=1e-9)
        assert len(parsed["top_features"]) <= 5
        assert set(parsed["top_features"]) <= set(fp.on_bits())

    def test_toxic_prediction_omits_efficiency(self, trained):
        fp = fingerprint_smiles("OCCNCCC(Cl)(Cl)Cl", radius=2, nbits=256)
        out = surrogate.predict(trained.params, fp)
        assert out.y_tox
        assert out.y_eff is None and out.p_eff is None
        parsed = trace.parse_trace(out.r_pred)
        assert parsed["toxic"]
        assert "score" not in parsed

    def test_feedback_round_carried(self, trained):
        fp = fingerprint_smiles("CCN(C)COCOCCCC", radius=2, nbits=256)
        out = surrogate.predict(trained.params, fp, feedback_rounds=2)
        assert out.round == 3
        assert trace.parse_trace(out.r_pred)["feedback_rounds"] == 2


class TestCheckpoint:
    def test_round_trip_bit_identical(self, tmp_path):
        recs = tiny_records()
        ckpt, _ = surrogate.train(recs, recs, tiny_config(epochs=5))
        path = tmp_path / "model.npz"
        surrogate.save_checkpoint(ckpt, path)
        loaded = surrogate.load_checkpoint(path)
        for name in ("W1", "b1", "W2", "b2", "W3", "b3"):
            assert (getattr(loaded.params, name) == getattr(ckpt.params, name)).all()
        assert loaded.epoch == ckpt.epoch
        assert loaded.radius == ckpt.radius
        assert loaded.nbits == ckpt.nbits
        assert loaded.config_digest == ckpt.config_digest
        assert loaded.val_efficiency_accuracy == ckpt.val_efficiency_accuracy

    def test_version_check(self, tmp_path):
        recs = tiny_records()
        ckpt, _ = surrogate.train(recs, recs, tiny_config(epochs=5))
        path = tmp_path / "model.npz"
        surrogate.save_checkpoint(ckpt, path)
        import json

        with np.load(path) as data:
            arrays = {k: data[k] for k in data.files}
        meta = json.loads(bytes(arrays["meta"]).decode())
        meta["version"] = 99
        arrays["meta"] = np.frombuffer(json.dumps(meta).encode(), dtype=np.uint8)
        np.savez(path, **arrays)
        with pytest.raises(ValueError, match="version"):
            surrogate.load_checkpoint(path)


class TestConfig:
    def test_digest_sensitivity(self):
        assert tiny_config().digest() == tiny_config().digest()
        assert tiny_config().digest() != tiny_config(lr=0.2).digest()

    def test_validation(self):
        with pytest.raises(ValueError):
            tiny_config(lr=0.0)
        with pytest.raises(ValueError):
            tiny_config(batch_size=0)
