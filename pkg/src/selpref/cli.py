"""Command-line entry point.

Subcommands: ``validate`` (load and check the inputs), ``train`` (write
a model dump), ``disambiguate`` (decide instances from a file), and
``eval`` (cross-validation or document holdout report).

All outputs are UTF-8 text with LF line endings and are deterministic
given the inputs, the flags and ``--seed``; exit status is 0 on
success, 1 on validation failure and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import sys
from dataclasses import dataclass

from . import evaluate, prefmodel
from .corpus import (RELATIONS, Relation, count_frequencies, load_inventory,
                     load_triples, parse_relation)
from .errors import InputError
from .taxonomy import NOUN, VERB, load_taxonomy
from .wsd import MODEL_TOKENS, Disambiguator, WsdInstance


@dataclass
class RunConfig:
    """Resolved command configuration (paths, flags, seed)."""

    taxonomy_path: str
    senses_path: str
    triples_path: str | None = None
    dump_path: str | None = None
    model_token: str = "c2c"
    rel: str = "both"
    k: int = 10
    seed: int = 0
    out: str | None = None
    skip_bad_lines: bool = False
    sampled_random: bool = False
    explain: bool = False

    @property
    def relations(self) -> tuple[Relation, ...]:
        if self.rel == "both":
            return RELATIONS
        return (parse_relation(self.rel),)


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _read_lines(path: str) -> list[str]:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.readlines()


def _load_inputs(cfg: RunConfig, warnings: list[str]):
    taxonomy = load_taxonomy(_read_lines(cfg.taxonomy_path), cfg.taxonomy_path)
    inventory = load_inventory(_read_lines(cfg.senses_path), taxonomy,
                               cfg.senses_path)
    triples = []
    if cfg.triples_path:
        triples = load_triples(_read_lines(cfg.triples_path), inventory,
                               cfg.triples_path,
                               skip_bad_lines=cfg.skip_bad_lines,
                               warn=warnings.append)
    return taxonomy, inventory, triples


def _digests(cfg: RunConfig) -> dict[str, str]:
    d = {"taxonomy": _sha256(cfg.taxonomy_path),
         "senses": _sha256(cfg.senses_path)}
    if cfg.triples_path:
        d["triples"] = _sha256(cfg.triples_path)
    return d


def _write_out(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _trained_model(cfg: RunConfig, taxonomy, triples):
    if cfg.dump_path:
        return prefmodel.read_model_dump(
            _read_lines(cfg.dump_path), taxonomy,
            expect_digests=_digests(cfg), source=cfg.dump_path)
    return prefmodel.PreferenceModel.train(taxonomy,
                                           count_frequencies(triples))


# -- subcommands -------------------------------------------------------------

def cmd_validate(cfg: RunConfig) -> int:
    warnings: list[str] = []
    taxonomy, inventory, triples = _load_inputs(cfg, warnings)
    noun_concepts = sum(1 for c in taxonomy.concepts if taxonomy.pos(c) == NOUN)
    noun_lemmas = len(inventory.lemmas(NOUN))
    verb_lemmas = len(inventory.lemmas(VERB))
    by_rel = {rel: sum(1 for t in triples if t.rel is rel) for rel in RELATIONS}
    docs = sorted({t.doc_id for t in triples})
    for w in warnings:
        print(f"warning: {w}")
    print(f"taxonomy: {taxonomy.n_concepts} concepts "
          f"({noun_concepts} noun, {taxonomy.n_concepts - noun_concepts} verb), "
          f"{len(taxonomy.roots)} roots")
    print(f"senses: {len(inventory)} lemmas "
          f"({noun_lemmas} noun, {verb_lemmas} verb)")
    print(f"triples: {len(triples)} "
          f"(subj {by_rel[Relation.SUBJECT]}, obj {by_rel[Relation.OBJECT]}), "
          f"{len(docs)} documents")
    print(f"{len(warnings)} warnings, 0 errors")
    return 0


def cmd_train(cfg: RunConfig) -> int:
    warnings: list[str] = []
    taxonomy, _, triples = _load_inputs(cfg, warnings)
    model = prefmodel.PreferenceModel.train(taxonomy,
                                            count_frequencies(triples))
    buf = io.StringIO()
    prefmodel.write_model_dump(model, buf, digests=_digests(cfg),
                               seed=cfg.seed)
    _write_out(cfg, buf.getvalue())
    est = model.estimates
    print(f"class-freq entries: {int((est.class_freq != 0).sum())}, "
          f"class-rel-verb: {len(est.class_rel_verb)}, "
          f"class-rel-class: {len(est.class_rel_class)}, "
          f"rel-class: {int((est.rel_class_freq != 0).sum())}",
          file=sys.stderr)
    return 0


def cmd_disambiguate(cfg: RunConfig, instances_path: str) -> int:
    warnings: list[str] = []
    taxonomy, inventory, triples = _load_inputs(cfg, warnings)
    model = _trained_model(cfg, taxonomy, triples)
    disamb = Disambiguator(model, inventory)
    kind = MODEL_TOKENS[cfg.model_token]

    lines = [f"# selpref-disambiguate\tmodel={kind}\trel={cfg.rel}"
             f"\tseed={cfg.seed}"]
    for lineno, raw in enumerate(_read_lines(instances_path), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            exc = InputError(f"expected 3 tab-separated fields, got "
                             f"{len(fields)}", source=instances_path,
                             line=lineno)
            if cfg.skip_bad_lines:
                print(f"warning: {exc}", file=sys.stderr)
                continue
            raise exc
        noun_lemma, rel_token, verb_lemma = fields
        rel = parse_relation(rel_token)
        if rel not in cfg.relations:
            continue
        inst = WsdInstance(noun_lemma, rel, verb_lemma)
        try:
            decision = disamb.disambiguate(inst, kind)
        except KeyError as exc:
            exc2 = InputError(f"unknown noun lemma {noun_lemma!r}",
                              source=instances_path, line=lineno)
            if cfg.skip_bad_lines:
                print(f"warning: {exc2}", file=sys.stderr)
                continue
            raise exc2 from exc
        answer = str(decision.answer) if decision.answer is not None else "-"
        scores = ",".join(
            f"{i}={_fmt_score(decision.scores[i])}"
            for i in sorted(decision.scores))
        row = [noun_lemma, rel.token, verb_lemma, answer, scores]
        if cfg.explain:
            expl = disamb.explain(inst, kind)
            row.append(",".join(
                f"{i}={expl.top_class(i) or '-'}"
                for i in sorted(expl.per_sense)))
        lines.append("\t".join(row))
    _write_out(cfg, "\n".join(lines) + "\n")
    return 0


def _fmt_score(score) -> str:
    return "-" if score.value is None else f"{score.value:.6g}"


def cmd_eval(cfg: RunConfig, xval_path: str | None, docs_path: str | None) -> int:
    warnings: list[str] = []
    taxonomy, inventory, triples = _load_inputs(cfg, warnings)
    if xval_path:
        targets = _read_tokens(xval_path)
        try:
            report = evaluate.crossvalidate(
                triples, taxonomy, inventory, targets, k=cfg.k, seed=cfg.seed,
                relations=cfg.relations, sampled_random=cfg.sampled_random)
        except ValueError as exc:
            raise InputError(str(exc), source=xval_path) from exc
    else:
        assert docs_path is not None
        docs = _read_tokens(docs_path)
        try:
            report = evaluate.holdout_documents(
                triples, taxonomy, inventory, docs, seed=cfg.seed,
                relations=cfg.relations, sampled_random=cfg.sampled_random)
        except ValueError as exc:
            raise InputError(str(exc), source=docs_path) from exc
    _write_out(cfg, report.to_tsv(extra_meta=_digests(cfg)))
    return 0


def _read_tokens(path: str) -> list[str]:
    out = []
    for raw in _read_lines(path):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selpref",
        description="Selectional-preference learning and noun sense "
                    "disambiguation over a concept taxonomy.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, triples_required=True):
        p.add_argument("--taxonomy", required=True, help="taxonomy file")
        p.add_argument("--senses", required=True, help="sense inventory file")
        p.add_argument("--triples", required=triples_required,
                       help="training triples file")
        p.add_argument("--rel", choices=["subj", "obj", "both"],
                       default="both", help="relation filter")
        p.add_argument("--seed", type=int, default=0,
                       help="seed recorded in output headers")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--skip-bad-lines", action="store_true",
                       help="downgrade bad triple/instance lines to warnings")

    p = sub.add_parser("validate", help="load all inputs and report counts")
    add_common(p)

    p = sub.add_parser("train", help="write a trained model dump")
    add_common(p)

    p = sub.add_parser("disambiguate",
                       help="decide noun senses for instances in a file")
    add_common(p, triples_required=False)
    p.add_argument("instances", help="instance file: noun<TAB>rel<TAB>verb")
    p.add_argument("--model", choices=sorted(MODEL_TOKENS), required=True,
                   help="preference model to apply")
    p.add_argument("--dump", help="trained model dump (alternative to "
                                  "--triples)")
    p.add_argument("--explain", action="store_true",
                   help="append each sense's top contributing class")

    p = sub.add_parser("eval", help="run an evaluation protocol")
    add_common(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--xval", metavar="TARGETS",
                      help="cross-validate on the target nouns listed in "
                           "this file")
    mode.add_argument("--docs", metavar="DOC_IDS",
                      help="hold out each document id listed in this file")
    p.add_argument("--k", type=int, default=10, help="fold count for --xval")
    p.add_argument("--sampled-random-baseline", action="store_true",
                   help="sample the random baseline instead of using the "
                        "analytic expectation")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        taxonomy_path=args.taxonomy,
        senses_path=args.senses,
        triples_path=getattr(args, "triples", None),
        dump_path=getattr(args, "dump", None),
        model_token=getattr(args, "model", "c2c"),
        rel=args.rel,
        k=getattr(args, "k", 10),
        seed=args.seed,
        out=args.out,
        skip_bad_lines=args.skip_bad_lines,
        sampled_random=getattr(args, "sampled_random_baseline", False),
        explain=getattr(args, "explain", False),
    )
    try:
        if args.command == "validate":
            return cmd_validate(cfg)
        if args.command == "train":
            return cmd_train(cfg)
        if args.command == "disambiguate":
            if not cfg.triples_path and not cfg.dump_path:
                build_parser().error("disambiguate needs --triples or --dump")
            return cmd_disambiguate(cfg, args.instances)
        if args.command == "eval":
            if cfg.k < 2:
                build_parser().error(f"--k must be >= 2, got {cfg.k}")
            return cmd_eval(cfg, args.xval, args.docs)
        raise AssertionError(args.command)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}"
              if not isinstance(exc, (InputError, OSError))
              else f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
