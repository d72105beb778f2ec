"""Train the MLP surrogate on a small synthetic dataset and evaluate it.

Shows: seeded data generation, per-study rescaling, the stratified split,
training with the conditional loss, and the metrics report.
"""

import warnings

from lipidscreen import dataset, evalkit, surrogate, synth
from lipidscreen.agent_types import Candidate
from lipidscreen.agents import SurrogateBackend

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    records = dataset.rescale_scores(synth.generate_records(300, 100, seed=11))
print(f"dataset: {len(records)} records "
      f"({sum(not r.toxic for r in records)} clean, "
      f"{sum(r.toxic for r in records)} toxic)")

spl = dataset.split(records, seed=7, train_n=200)
by_id = {r.id: r for r in records}
train = [by_id[i] for i in spl.train]
val = [by_id[i] for i in spl.eval]
print(f"split: {len(train)} train / {len(val)} eval (stratified, seed 7)")

config = surrogate.TrainConfig(
    lr=0.05, alpha=0.1, epochs=20, batch_size=32, seed=0,
    hidden=(64, 32), eval_every=5, radius=2, nbits=1024,
)
ckpt, history = surrogate.train(train, val, config)
print(f"best checkpoint: epoch {ckpt.epoch}, "
      f"eval efficiency accuracy {ckpt.val_efficiency_accuracy:.3f}, "
      f"toxic accuracy {ckpt.val_toxic_accuracy:.3f}")

backend = SurrogateBackend(ckpt)
pairs = []
for rec in val:
    out = backend.predict(Candidate(id=rec.id, smiles=rec.smiles), [])
    pairs.append(evalkit.EvalPair(
        id=rec.id, true_tox=rec.toxic, pred_tox=out.y_tox,
        true_eff=rec.efficiency_score, pred_eff=out.y_eff,
    ))
report = evalkit.compute_metrics(pairs)
print("efficiency_acc\textreme_acc\tmiddle_acc\tmae\ttoxic_acc")
print(report.summary_row())
