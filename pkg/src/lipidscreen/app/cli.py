"""Command-line shell: generate-data, train, eval, screen, serve, review."""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .. import dataset, evalkit, orchestrator, surrogate, synth
from ..agent_types import BackendConfig, Candidate
from ..agents import make_backends, SurrogateBackend
from ..chem import HASH_SEED
from .config import load_config, write_defaults
from .store import ConflictError, HumanVerdict, Store, StoreHumanPort


def _cmd_generate_data(args) -> int:
    records = synth.generate_records(
        n_clean=args.n_clean, n_toxic=args.n_toxic, seed=args.seed
    )
    records = dataset.rescale_scores(records)
    dataset.save_records(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    if args.library_out:
        library = synth.generate_library(n=args.library_n, seed=args.seed + 1)
        with open(args.library_out, "w", encoding="utf-8") as fh:
            for cid, smi in library:
                fh.write(json.dumps({"id": cid, "smiles": smi}) + "\n")
        print(f"wrote {len(library)} library candidates to {args.library_out}")
    return 0


def _split_records(records, cfg):
    spl = dataset.split(records, seed=cfg["split_seed"], train_n=cfg["train_n"])
    by_id = {r.id: r for r in records}
    return [by_id[i] for i in spl.train], [by_id[i] for i in spl.eval], spl


def _cmd_train(args) -> int:
    cfg = load_config(args.config)
    records = dataset.load_records(args.data)
    if args.train_n is not None:
        cfg["train_n"] = args.train_n
    if args.alpha is not None:
        cfg["alpha"] = args.alpha
    if cfg["train_n"] > len(records):
        print(
            f"error: train_n {cfg['train_n']} exceeds dataset size {len(records)}",
            file=sys.stderr,
        )
        return 1
    train_recs, val_recs, spl = _split_records(records, cfg)
    tcfg = surrogate.TrainConfig(
        lr=cfg["lr"],
        alpha=cfg["alpha"],
        eps=cfg["eps"],
        epochs=args.epochs or cfg["epochs"],
        batch_size=cfg["batch_size"],
        seed=cfg["seed"],
        hidden=(cfg["hidden1"], cfg["hidden2"]),
        eval_every=cfg["eval_every"],
        radius=cfg["radius"],
        nbits=cfg["nbits"],
    )
    ckpt, history = surrogate.train(train_recs, val_recs, tcfg)
    # atomic write: never leave a partial checkpoint behind
    out = Path(args.out)
    fd, tmp = tempfile.mkstemp(dir=out.parent or Path("."), suffix=".npz")
    os.close(fd)
    surrogate.save_checkpoint(ckpt, tmp)
    os.replace(tmp, out)
    spl.manifest_digest = dataset.file_digest(args.data)
    dataset.save_split(spl, str(out) + ".split.json")
    print(
        f"best checkpoint: epoch {ckpt.epoch}, "
        f"val efficiency accuracy {ckpt.val_efficiency_accuracy:.4f}, "
        f"val toxic accuracy {ckpt.val_toxic_accuracy:.4f} -> {out}"
    )
    return 0


def _pairs_from_predictions(eval_recs, backend):
    pairs = []
    for rec in eval_recs:
        out = backend.predict(Candidate(id=rec.id, smiles=rec.smiles), [])
        pairs.append(
            evalkit.EvalPair(
                id=rec.id,
                true_tox=rec.toxic,
                pred_tox=out.y_tox,
                true_eff=rec.efficiency_score,
                pred_eff=out.y_eff,
            )
        )
    return pairs


def _cmd_eval(args) -> int:
    cfg = load_config(args.config)
    records = dataset.load_records(args.data)
    _, eval_recs, _ = _split_records(records, cfg)
    backend = SurrogateBackend.from_checkpoint(args.ckpt)
    report = evalkit.compute_metrics(_pairs_from_predictions(eval_recs, backend))
    print("efficiency_acc\textreme_acc\tmiddle_acc\tmae\ttoxic_acc")
    print(report.summary_row())
    if args.out:
        payload = {
            "efficiency_accuracy": report.efficiency_accuracy,
            "extreme_accuracy": report.extreme_accuracy,
            "middle_accuracy": report.middle_accuracy,
            "toxic_accuracy": report.toxic_accuracy,
            "mae": report.mae,
            "sizes": report.sizes,
        }
        Path(args.out).write_text(json.dumps(payload, indent=2), encoding="utf-8")
    return 0


def _load_candidates(path) -> list[Candidate]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                obj = json.loads(line)
                out.append(Candidate(id=str(obj["id"]), smiles=str(obj["smiles"])))
    return out


def _cmd_screen(args) -> int:
    cfg = load_config(args.config)
    for key in ("tau", "max_loops", "top_fraction", "parallelism"):
        val = getattr(args, key)
        if val is not None:
            cfg[key] = val
    ocfg = orchestrator.OrchestratorConfig(
        tau=cfg["tau"],
        max_loops=cfg["max_loops"],
        top_fraction=cfg["top_fraction"],
        parallelism=cfg["parallelism"],
    )
    if args.fixture:
        pred_cfg = BackendConfig(kind="scripted", fixture_path=args.fixture)
        predictor, verifier = make_backends(pred_cfg)
        fp_params = None
    else:
        pred_cfg = BackendConfig(kind="surrogate", checkpoint_path=args.ckpt)
        predictor, verifier = make_backends(pred_cfg)
        fp_params = predictor.fingerprint_params

    candidates = _load_candidates(args.library)
    store = None
    human_port = None
    if args.store:
        store = Store(args.store)
        human_port = StoreHumanPort(store, args.run_id)

    result = orchestrator.screen_library(candidates, predictor, verifier, ocfg, human_port)
    report = orchestrator.to_report(result, ocfg, fingerprint_params=fp_params)
    digest = orchestrator.report_digest(report)
    if store is not None:
        store.start_run(args.run_id, report)
    if args.out:
        Path(args.out).write_text(json.dumps(report, indent=2, sort_keys=True), encoding="utf-8")
    print(orchestrator.summary_table(result))
    print(f"report digest: {digest}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import make_app

    store = Store(args.store)
    uvicorn.run(make_app(store), host=args.host, port=args.port)
    return 0


def _cmd_review(args) -> int:
    store = Store(args.store)
    if args.ticket:
        verdict = HumanVerdict(
            toxic=args.toxic,
            efficiency=args.efficiency,
            reviewer=args.reviewer,
            note=args.note,
        )
        try:
            ticket = store.submit_verdict(args.ticket, verdict)
        except ConflictError as exc:
            print(f"conflict: {exc} (original verdict: {exc.original})", file=sys.stderr)
            return 1
        print(f"ticket {ticket.ticket_id} resolved")
        return 0
    pending = store.list_escalations("pending")
    if not pending:
        print("no pending escalations")
        return 0
    for t in pending:
        print(f"{t.ticket_id}  candidate {t.candidate_id}  {t.smiles}")
        for rnd in t.transcript:
            out = rnd["output"]
            ver = rnd.get("verdict") or {}
            print(
                f"  round {out['round']}: eff={out.get('y_eff')} conf={out['conf']:.3f} "
                f"verifier={ver.get('y_ver')} feedback={ver.get('r_corr')}"
            )
    print("resolve with: lipidscreen review --store ... --ticket ID "
          "(--toxic | --efficiency N) --reviewer YOU")
    return 0


def _cmd_write_config(args) -> int:
    write_defaults(args.out)
    print(f"wrote default config to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lipidscreen")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate-data", help="emit a seeded synthetic dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--n-clean", type=int, default=1200)
    p.add_argument("--n-toxic", type=int, default=400)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--library-out")
    p.add_argument("--library-n", type=int, default=10024)
    p.set_defaults(func=_cmd_generate_data)

    p = sub.add_parser("train", help="train the surrogate predictor")
    p.add_argument("--data", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--config")
    p.add_argument("--train-n", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--epochs", type=int)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("eval", help="evaluate a checkpoint on the eval split")
    p.add_argument("--data", required=True)
    p.add_argument("--ckpt", required=True)
    p.add_argument("--config")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("screen", help="run the batch screening pipeline")
    p.add_argument("--library", required=True)
    p.add_argument("--ckpt")
    p.add_argument("--fixture", help="scripted backend fixture file")
    p.add_argument("--config")
    p.add_argument("--tau", type=float)
    p.add_argument("--max-loops", dest="max_loops", type=int)
    p.add_argument("--top-fraction", dest="top_fraction", type=float)
    p.add_argument("--parallelism", type=int)
    p.add_argument("--store", help="store directory for escalation tickets")
    p.add_argument("--run-id", default="run-1")
    p.add_argument("--out", help="report file")
    p.set_defaults(func=_cmd_screen)

    p = sub.add_parser("serve", help="start the review service")
    p.add_argument("--store", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("review", help="terminal fallback for human verdicts")
    p.add_argument("--store", required=True)
    p.add_argument("--ticket")
    p.add_argument("--toxic", action="store_true")
    p.add_argument("--efficiency", type=int)
    p.add_argument("--reviewer", default="cli")
    p.add_argument("--note", default="")
    p.set_defaults(func=_cmd_review)

    p = sub.add_parser("write-config", help="write the default config file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_write_config)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "screen" and not (args.ckpt or args.fixture):
        print("error: screen needs --ckpt or --fixture", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (dataset.DatasetError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
