"""Command-line entry point: ``mgli <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from pathlib import Path

import numpy as np

from mgli.curves import hopf_link
from mgli.errors import InvalidArgumentError, MGLIError
from mgli.flexibility import FitOptions, TRANSFORMS, benchmark, fit_bfactor
from mgli.geometry import Segmentation, partition_structure
from mgli.gli import grand_sum, polyline_gli, projection_crossing_estimate, quadrature_gli, segmentation_matrix
from mgli.io import read_structure, write_features_csv, write_matrix_csv
from mgli.multiscale import ScaleScheme, localized_features
from mgli.protein import DEFAULT_SCHEME, protein_features, protein_segmentation, read_pdb

KINDS = ("pdb", "structure-json", "polyline-csv")


def _kind(path, kind):
    if kind:
        return kind
    suffix = Path(path).suffix.lower()
    if suffix in (".pdb", ".ent"):
        return "pdb"
    if suffix == ".json":
        return "structure-json"
    if suffix == ".csv":
        return "polyline-csv"
    raise InvalidArgumentError(f"cannot infer input kind of {path}; pass --kind")


def _scheme(text):
    try:
        return ScaleScheme.parse(text)
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _segmentations(args) -> tuple[Segmentation, Segmentation]:
    kind = _kind(args.input, args.kind)
    if kind == "pdb":
        seg = protein_segmentation(read_pdb(args.input, args.chain))
        return seg, seg
    structure = read_structure(args.input, kind)
    if args.rows is None and args.cols is None:
        seg = partition_structure(structure, args.segments)
        return seg, seg
    row_names = [args.rows] if args.rows else structure.names
    col_names = [args.cols] if args.cols else structure.names
    if row_names == col_names:
        seg = partition_structure(structure, args.segments, row_names)
        return seg, seg
    return (partition_structure(structure, args.segments, row_names),
            partition_structure(structure, args.segments, col_names))


def cmd_gli(args):
    structure = read_structure(args.input, _kind(args.input, args.kind))
    names = structure.names
    a = args.a or names[0]
    if args.b:
        b = args.b
    elif len(names) > 1:
        b = names[1]
    else:
        raise InvalidArgumentError("structure has one component; need two for gli")
    pa, pb = structure[a], structure[b]
    print(f"components: {a} {b}")
    print(f"signed_gli={polyline_gli(pa, pb, 'signed'):.9f}")
    print(f"absolute_gli={polyline_gli(pa, pb, 'absolute'):.9f}")
    if args.crossings:
        est, se = projection_crossing_estimate(pa, pb, args.crossings, args.seed, return_stderr=True)
        print(f"crossing_estimate={est:.9f} stderr={se:.9f} directions={args.crossings} seed={args.seed}")
    return 0


def cmd_matrix(args):
    rows, cols = _segmentations(args)
    m = segmentation_matrix(rows, cols, args.mode)
    paths = write_matrix_csv(m, args.output)
    for i, j, msg in m.diagnostics:
        print(f"warning: ({i}, {j}) {msg}", file=sys.stderr)
    print(f"wrote {paths[0]} and {paths[1]} ({m.shape[0]}x{m.shape[1]}, grand sum {grand_sum(m):.9f})")
    return 0


def cmd_features(args):
    kind = _kind(args.input, args.kind)
    if kind == "pdb":
        f = protein_features(read_pdb(args.input, args.chain), args.scheme, args.mode)
    else:
        rows, cols = _segmentations(args)
        f = localized_features(segmentation_matrix(rows, cols, args.mode), args.scheme)
    write_features_csv(f, args.output)
    print(f"wrote {args.output} ({f.shape[0]}x{f.shape[1]})")
    return 0


def _fit_options(args):
    return FitOptions(args.transform, args.epsilon, args.ridge)


def cmd_bfactor(args):
    chain = read_pdb(args.input, args.chain)
    t0 = time.perf_counter()
    feats = protein_features(chain, args.scheme, args.mode)
    rep = fit_bfactor(feats, chain.bfactors, _fit_options(args), protein_id=chain.pdb_id)
    out = Path(args.output)
    payload = rep.to_dict()
    payload.update(chain=chain.chain_id, scheme=args.scheme.labels[0] + ".." + args.scheme.labels[-1],
                   n_bins=args.scheme.n_bins, mode=args.mode)
    out.write_text(json.dumps(payload, indent=1) + "\n")
    stem = out.name[:-5] if out.name.endswith(".json") else out.name
    resid = out.with_name(stem + ".residues.csv")
    with open(resid, "w") as fh:
        fh.write("residue_id,experimental_b,fitted_b\n")
        for rid, e, f in zip(chain.residue_ids, rep.experimental, rep.fitted):
            fh.write(f"{rid},{e:.9g},{f:.9g}\n")
    print(f"{chain.pdb_id} chain {chain.chain_id}: n={len(chain)} pearson_r={rep.pearson_r:.6f} "
          f"({time.perf_counter() - t0:.2f} s); wrote {out} and {resid}")
    return 0


def cmd_benchmark(args):
    report = benchmark(args.manifest, args.scheme, _fit_options(args), args.mode)
    report.write_csv(args.output)
    for row in report.failures:
        print(f"failed: {row.pdb_id}: {row.status}", file=sys.stderr)
    print(f"mean_pearson_r={report.mean_r:.6f} over {len(report.successes)} proteins "
          f"({len(report.failures)} failed); wrote {args.output}")
    return 1 if report.failures else 0


def _print_matrix(name, g):
    print(f"{name} =")
    for row in g:
        print("  " + " ".join(f"{v:8.4f}" for v in row))
    print(f"grand sum of {name} = {g.sum():.4f}")


def cmd_demo_hopf(args):
    c1, c2 = hopf_link()
    for name, m in (("G1", 4), ("G2", 6)):
        g = np.array([[quadrature_gli(c1, c2, (i / 4, (i + 1) / 4), (j / m, (j + 1) / m), tol=args.tol)
                       for j in range(m)] for i in range(4)])
        _print_matrix(name, g)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mgli", description="Multiscale Gauss linking integral toolkit")
    sub = p.add_subparsers(dest="command", required=True, metavar="subcommand")

    def inputs(sp, structure=True):
        sp.add_argument("--input", required=True, help="pdb, structure JSON or polyline CSV file")
        sp.add_argument("--kind", choices=KINDS, help="input format (default: from suffix)")
        sp.add_argument("--chain", help="PDB chain id (default: first chain)")
        if structure:
            sp.add_argument("--segments", type=int, default=4,
                            help="equal-arc pieces per component for non-PDB input (default 4)")
            sp.add_argument("--rows", help="component for matrix rows (default: all, self-analysis)")
            sp.add_argument("--cols", help="component for matrix columns")

    def mode(sp, default):
        sp.add_argument("--mode", choices=("signed", "absolute"), default=default)

    def fit(sp):
        sp.add_argument("--scheme", type=_scheme, default=ScaleScheme.parse(DEFAULT_SCHEME),
                        help=f"start:stop:step or comma-separated edges (default {DEFAULT_SCHEME})")
        mode(sp, "absolute")
        sp.add_argument("--transform", choices=TRANSFORMS, default="reciprocal")
        sp.add_argument("--epsilon", type=float, default=1e-3, help="reciprocal offset")
        sp.add_argument("--ridge", type=float, default=1e-6, help="ridge fallback penalty")

    sp = sub.add_parser("gli", help="total GLI between two components")
    sp.add_argument("--input", required=True)
    sp.add_argument("--kind", choices=KINDS[1:])
    sp.add_argument("--a", help="first component (default: first)")
    sp.add_argument("--b", help="second component (default: second)")
    sp.add_argument("--crossings", type=int, default=0,
                    help="also run the projection-crossing estimate with this many directions")
    sp.add_argument("--seed", type=int, default=42)
    sp.set_defaults(func=cmd_gli)

    sp = sub.add_parser("matrix", help="segmentation matrix + distance matrix CSVs")
    inputs(sp)
    mode(sp, "signed")
    sp.add_argument("--output", required=True, help="matrix CSV; distances go to <stem>.dist.csv")
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("features", help="mGLI feature matrix CSV")
    inputs(sp)
    sp.add_argument("--scheme", type=_scheme, default=ScaleScheme.parse(DEFAULT_SCHEME))
    mode(sp, "absolute")
    sp.add_argument("--output", required=True)
    sp.set_defaults(func=cmd_features)

    sp = sub.add_parser("bfactor", help="fit B-factors of one chain")
    inputs(sp, structure=False)
    fit(sp)
    sp.add_argument("--output", required=True, help="report JSON; residues go to <stem>.residues.csv")
    sp.set_defaults(func=cmd_bfactor)

    sp = sub.add_parser("benchmark", help="fit every protein of a manifest")
    sp.add_argument("--manifest", required=True, help="text file with one path[,chain] per line")
    fit(sp)
    sp.add_argument("--output", required=True, help="report CSV")
    sp.set_defaults(func=cmd_benchmark)

    sp = sub.add_parser("demo-hopf", help="print the Hopf-link segmentation matrices")
    sp.add_argument("--tol", type=float, default=1e-7)
    sp.set_defaults(func=cmd_demo_hopf)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"warning: {msg}", file=sys.stderr)
            return args.func(args)
    except (MGLIError, OSError) as exc:
        print(f"mgli: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
