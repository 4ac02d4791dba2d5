"""Command-line interface emitting figure-ready CSV/TSV data.

Exit codes: 0 success, 1 usage error, 2 numerical failure. A config file
of key=value lines can supply defaults for any long flag; explicit flags
win. All randomness sits behind --seed flags, every output is plain text.
"""

import argparse
import csv
import os
import sys

import numpy as np

from . import __version__
from .deform import (deformed_laplacian, dilation_potential,
                     magnetic_potential, sign_potential)
from .effective import effective_graph
from .graphs import (DirectedGraph, block_model_sample, load_edge_list,
                     save_edge_list, save_undirected_edge_list, symmetrize)
from .hodge import (component_subgraphs, hodge_decompose, spring_rank,
                    trophic_levels)
from .imaging import (img_to_digraph_gradient, img_to_digraph_kernel,
                      img_to_digraph_tanh, read_pgm, segment_magnetic, write_pgm)
from .measures import betweenness, block_density, ccdf, knn_degree_correlation
from .rgeg import RgParams, rgeg_flow
from .spectral import (default_beta_grid, eigendecompose, embed, specific_heat)


class CliParser(argparse.ArgumentParser):
    """argparse parser that exits with code 1 on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def format_complex(z) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_complex(token: str) -> complex:
    return complex(token.strip().replace("i", "j"))


def write_matrix_csv(path, M, kind=None, normalized=None):
    """Dense row-major CSV, complex entries as re+imi."""
    with open(path, "w") as fh:
        if kind is not None:
            fh.write(f"# kind={kind} normalized={int(bool(normalized))} n={M.shape[0]}\n")
        for row in np.atleast_2d(M):
            fh.write(",".join(format_complex(z) for z in row) + "\n")


def read_matrix_csv(path):
    kind = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for part in line[1:].split():
                    if part.startswith("kind="):
                        kind = part.split("=", 1)[1]
                continue
            rows.append([parse_complex(t) for t in line.split(",")])
    return np.array(rows, dtype=complex), kind


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _load_graph(args) -> DirectedGraph:
    labels = getattr(args, "labels", None)
    return load_edge_list(args.input, labels_path=labels)


def _parse_beta_grid(spec_str):
    if spec_str is None:
        return default_beta_grid()
    if spec_str.startswith("log:"):
        _, lo, hi, num = spec_str.split(":")
        return np.logspace(np.log10(float(lo)), np.log10(float(hi)), int(num))
    return np.array([float(t) for t in spec_str.split(",")])


def cmd_generate(args):
    if args.generator != "block-model":
        raise ValueError(f"unknown generator {args.generator!r}")
    g = block_model_sample(args.blocks, args.size, args.pc, args.pd, args.seed)
    labels_path = args.labels_out or (args.output + ".labels.csv")
    save_edge_list(g, args.output, labels_path=labels_path)
    print(f"wrote {g.n} vertices, {g.num_edges} edges to {args.output}")
    return 0


def cmd_deform(args):
    g = _load_graph(args)
    if args.kind == "magnetic":
        T = magnetic_potential(g, args.q)
    elif args.kind == "dilation":
        T = dilation_potential(g, args.alpha)
    elif args.kind == "sign":
        T = sign_potential(g)
    else:
        raise ValueError(f"unknown deformation kind {args.kind!r}")
    L = deformed_laplacian(g, T, normalized=args.normalized)
    write_matrix_csv(args.output, L.matrix, kind=L.kind, normalized=L.normalized)
    print(f"wrote {args.kind} Laplacian ({g.n}x{g.n}) to {args.output}")
    return 0


def cmd_spectrum(args):
    M, _ = read_matrix_csv(args.input)
    spec = eigendecompose(M)
    rows = [(i, f"{v.real:.17g}", f"{v.imag:.17g}")
            for i, v in enumerate(np.atleast_1d(spec.eigenvalues).astype(complex))]
    _write_csv(args.output, ["index", "re", "im"], rows)
    print(f"wrote {len(rows)} eigenvalues to {args.output}")
    return 0


def cmd_specific_heat(args):
    M, _ = read_matrix_csv(args.input)
    spec = eigendecompose(M)
    if not spec.hermitian:
        raise ValueError("specific heat requires a Hermitian matrix")
    grid = _parse_beta_grid(args.beta_grid)
    c = specific_heat(spec, grid)
    _write_csv(args.output, ["beta", "c"],
               [(f"{b:.17g}", f"{v:.17g}") for b, v in zip(grid, c)])
    print(f"wrote specific heat on {len(grid)} beta points to {args.output}")
    return 0


def cmd_effective(args):
    g = _load_graph(args)
    eff = effective_graph(g, args.q, args.g, beta=args.beta,
                          scale_phase_by_q=args.literal_phase)
    save_undirected_edge_list(eff.graph, args.output)
    print(f"wrote effective graph ({eff.graph.num_edges} edges) to {args.output}")
    return 0


def cmd_hodge(args):
    g = _load_graph(args)
    os.makedirs(args.output, exist_ok=True)
    comps = hodge_decompose(g)
    spring = spring_rank(g, weighted=args.weighted)
    trophic = trophic_levels(g, weighted=args.weighted)
    if args.action in ("decompose", "rank"):
        rows = [(u, f"{comps.potential[u]:.17g}", f"{spring.score[u]:.17g}",
                 f"{trophic.score[u]:.17g}") for u in range(g.n)]
        _write_csv(os.path.join(args.output, "potential.csv"),
                   ["vertex", "phi", "spring", "trophic"], rows)
    if args.action == "decompose":
        for name, sub in component_subgraphs(g, comps).items():
            save_edge_list(sub, os.path.join(args.output, f"{name}.tsv"))
    if args.action == "histogram":
        for name, sub in component_subgraphs(g, comps).items():
            weights = np.array(sorted(sub.edges.values()), dtype=float)
            if weights.size:
                counts, edges = np.histogram(weights, bins=args.bins)
            else:
                counts, edges = np.zeros(args.bins, dtype=int), np.linspace(0, 1, args.bins + 1)
            rows = [(f"{edges[i]:.17g}", f"{edges[i + 1]:.17g}", int(counts[i]))
                    for i in range(len(counts))]
            _write_csv(os.path.join(args.output, f"{name}_hist.csv"),
                       ["bin_lo", "bin_hi", "count"], rows)
    print(f"wrote hodge {args.action} outputs to {args.output}")
    return 0


def _run_rgeg_once(g, params, outdir):
    os.makedirs(outdir, exist_ok=True)
    state = rgeg_flow(g, params)
    for k, level in enumerate(state.graphs):
        W = (level.weight_matrix() > 0).astype(int)
        np.savetxt(os.path.join(outdir, f"level{k}_adjacency.csv"), W,
                   fmt="%d", delimiter=",")
        und = symmetrize(level)
        _write_csv(os.path.join(outdir, f"level{k}_ccdf.csv"),
                   ["degree", "fraction"], ccdf(und))
        _write_csv(os.path.join(outdir, f"level{k}_knn.csv"),
                   ["degree", "mean_neighbor_degree"], knn_degree_correlation(und))
    for k, part in enumerate(state.partitions):
        _write_csv(os.path.join(outdir, f"level{k}_partition.csv"),
                   ["fine", "coarse"], sorted(part.items()))
    if state.purities is not None:
        _write_csv(os.path.join(outdir, "purity.csv"), ["level", "purity"],
                   [(k, f"{p:.17g}") for k, p in enumerate(state.purities)])
    return state


def cmd_rgeg(args):
    params = RgParams(q=args.q, g=args.g, beta=args.beta,
                      alpha_disparity=args.alpha_disparity, steps=args.steps,
                      scale_phase_by_q=args.literal_phase)
    if args.block_model:
        blocks, size, pc, pd = args.block_model.split(",")
        seeds = [int(s) for s in (args.seeds or str(args.seed)).split(",")]
        jobs = max(1, args.jobs)
        tasks = [(int(blocks), int(size), float(pc), float(pd), s) for s in seeds]
        if jobs > 1 and len(tasks) > 1:
            import multiprocessing as mp
            with mp.Pool(jobs) as pool:
                pool.starmap(_rgeg_seed_task,
                             [(t, params, os.path.join(args.output, f"seed{t[4]}"))
                              for t in tasks])
        else:
            for t in tasks:
                _rgeg_seed_task(t, params, os.path.join(args.output, f"seed{t[4]}"))
        print(f"wrote rgeg flows for {len(tasks)} seed(s) to {args.output}")
        return 0
    if args.input is None:
        raise ValueError("rgeg needs either -i/--input or --block-model")
    g = _load_graph(args)
    state = _run_rgeg_once(g, params, args.output)
    sizes = " -> ".join(str(lvl.n) for lvl in state.graphs)
    print(f"rgeg flow {sizes}; outputs in {args.output}")
    return 0


def _rgeg_seed_task(task, params, outdir):
    blocks, size, pc, pd, seed = task
    g = block_model_sample(blocks, size, pc, pd, seed)
    _run_rgeg_once(g, params, outdir)


def cmd_embed(args):
    g = _load_graph(args)
    points = embed(g, args.q, args.g, l=args.eigvec_index)
    rows = [(p.vertex, f"{p.theta:.17g}", f"{p.s:.17g}",
             f"{p.xy[0]:.17g}", f"{p.xy[1]:.17g}") for p in points]
    _write_csv(args.output, ["vertex", "theta", "s", "x", "y"], rows)
    print(f"wrote embedding of {len(rows)} vertices to {args.output}")
    return 0


def cmd_measures(args):
    g = _load_graph(args)
    und = symmetrize(g)
    if args.measure == "betweenness":
        b = betweenness(und, weighted=args.weighted)
        _write_csv(args.output, ["vertex", "betweenness"],
                   [(u, f"{b[u]:.17g}") for u in range(und.n)])
    elif args.measure == "ccdf":
        _write_csv(args.output, ["degree", "fraction"], ccdf(und))
    elif args.measure == "knn":
        _write_csv(args.output, ["degree", "mean_neighbor_degree"],
                   knn_degree_correlation(und))
    elif args.measure == "block-density":
        if args.partition:
            part = {}
            with open(args.partition, newline="") as fh:
                reader = csv.reader(fh)
                next(reader)
                for row in reader:
                    part[int(row[0])] = int(row[1])
        elif g.labels is not None:
            names = sorted(set(g.labels))
            part = {u: names.index(g.labels[u]) for u in range(g.n)}
        else:
            raise ValueError("block-density needs --partition or vertex labels")
        dens = block_density(g, part)
        np.savetxt(args.output, dens, delimiter=",", fmt="%.17g")
    else:
        raise ValueError(f"unknown measure {args.measure!r}")
    print(f"wrote {args.measure} to {args.output}")
    return 0


def cmd_img2graph(args):
    img = read_pgm(args.input)
    if args.mapping == "kernel":
        g = img_to_digraph_kernel(img, args.sigma_s, args.sigma_i,
                                  args.delta_min, radius=args.radius)
    elif args.mapping == "tanh":
        g = img_to_digraph_tanh(img, args.alpha, args.delta_min,
                                radius=args.radius)
    elif args.mapping == "gradient":
        g = img_to_digraph_gradient(img, args.eta, radius=args.radius)
    else:
        raise ValueError(f"unknown mapping {args.mapping!r}")
    save_edge_list(g, args.output)
    print(f"wrote {g.num_edges} edges for {img.n_pixels} pixels to {args.output}")
    return 0


def cmd_segment(args):
    img = read_pgm(args.input)
    if args.mapping == "gradient":
        g = img_to_digraph_gradient(img, args.eta, radius=args.radius)
    elif args.mapping == "kernel":
        g = img_to_digraph_kernel(img, args.sigma_s, args.sigma_i,
                                  args.delta_min, radius=args.radius)
    else:
        raise ValueError(f"unknown mapping {args.mapping!r}")
    labels = segment_magnetic(g, args.q, args.k, seed=args.seed)
    grid = labels.reshape(img.height, img.width)
    write_pgm(args.output, grid, maxval=max(args.k - 1, 1))
    _write_csv(args.output + ".csv", ["vertex", "cluster"],
               list(enumerate(labels.tolist())))
    print(f"wrote {args.k}-cluster segmentation to {args.output}")
    return 0


def build_parser() -> CliParser:
    parser = CliParser(prog="effgraph",
                       description="Effective-graph analysis of directed and "
                                   "signed networks")
    parser.add_argument("--version", action="version",
                        version=f"effgraph {__version__}")
    parser.add_argument("--config", default=None,
                        help="key=value file supplying flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample synthetic graphs")
    p.add_argument("generator", choices=["block-model"])
    p.add_argument("--blocks", type=int, default=3)
    p.add_argument("--size", type=int, default=100)
    p.add_argument("--pc", type=float, default=0.5)
    p.add_argument("--pd", type=float, default=0.7)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labels-out", default=None)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("deform", help="build a deformed Laplacian")
    p.add_argument("--kind", choices=["magnetic", "dilation", "sign"],
                   default="magnetic")
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--normalized", action="store_true")
    p.add_argument("--labels", default=None)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("spectrum", help="eigenvalues of a stored matrix")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("specific-heat", help="spectral specific heat")
    p.add_argument("--beta-grid", default=None,
                   help="comma list or log:lo:hi:num (default log:1e-2:1e3:64)")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_specific_heat)

    p = sub.add_parser("effective", help="frustration-damped effective graph")
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--g", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--literal-phase", action="store_true",
                   help="scale solver phases by q")
    p.add_argument("--labels", default=None)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_effective)

    p = sub.add_parser("hodge", help="flow decomposition and rankings")
    p.add_argument("action", choices=["decompose", "rank", "histogram"])
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--bins", type=int, default=10)
    p.add_argument("--labels", default=None)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_hodge)

    p = sub.add_parser("rgeg", help="renormalization flow on effective graphs")
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--g", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--alpha-disparity", type=float, default=0.25)
    p.add_argument("--steps", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", default=None, help="comma list for sweeps")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--literal-phase", action="store_true")
    p.add_argument("--block-model", default=None,
                   help="blocks,size,pc,pd to generate instead of -i")
    p.add_argument("--labels", default=None)
    p.add_argument("-i", "--input", default=None)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=cmd_rgeg)

    p = sub.add_parser("embed", help="polar spectral embedding")
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--g", type=float, default=0.0)
    p.add_argument("--eigvec-index", type=int, default=1)
    p.add_argument("--labels", default=None)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("measures", help="undirected measures of a graph")
    p.add_argument("measure", choices=["betweenness", "ccdf", "knn",
                                       "block-density"])
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--partition", default=None)
    p.add_argument("--labels", default=None)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("img2graph", help="map an image to a directed graph")
    p.add_argument("mapping", choices=["kernel", "tanh", "gradient"])
    p.add_argument("--sigma-s", type=float, default=1.0)
    p.add_argument("--sigma-i", type=float, default=0.1)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--delta-min", type=float, default=0.0)
    p.add_argument("--radius", type=float, default=1.5)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_img2graph)

    p = sub.add_parser("segment", help="magnetic spectral segmentation")
    p.add_argument("--q", type=float, default=0.1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--mapping", choices=["gradient", "kernel"],
                   default="gradient")
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--sigma-s", type=float, default=1.0)
    p.add_argument("--sigma-i", type=float, default=0.1)
    p.add_argument("--delta-min", type=float, default=0.0)
    p.add_argument("--radius", type=float, default=1.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_segment)

    return parser


def _apply_config(parser, args, argv):
    if not args.config:
        return args
    config = {}
    with open(args.config) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or "=" not in line:
                continue
            key, value = line.split("=", 1)
            config[key.strip().replace("-", "_")] = value.strip()
    given = set()
    for token in argv:
        if token.startswith("--"):
            given.add(token[2:].split("=", 1)[0].replace("-", "_"))
    for key, value in config.items():
        if key in given or not hasattr(args, key):
            continue
        current = getattr(args, key)
        if isinstance(current, bool):
            setattr(args, key, value.lower() in ("1", "true", "yes"))
        elif isinstance(current, int):
            setattr(args, key, int(value))
        elif isinstance(current, float):
            setattr(args, key, float(value))
        else:
            setattr(args, key, value)
    return args


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args = _apply_config(parser, args, argv)
    try:
        return args.func(args)
    except np.linalg.LinAlgError as exc:
        print(f"effgraph: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"effgraph: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
