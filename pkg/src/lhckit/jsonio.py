"""File formats: JSON for the core objects, text for codebooks, CSV for tables.

Every writer is deterministic (sorted keys, LF endings, '.' decimals) so
artifacts are byte-identical across runs, and every format round-trips
losslessly through its reader.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .bipartite import BipartiteInstance, BranchSwapReport
from .bsc_id import Codebook
from .channel import Channel
from .codes import FunctionCode
from .errors import ShapeError
from .hypergraph import Alphabet, EdgeMap, FunctionTable, Hypergraph
from .verify import LhcCertificate


def write_json(path, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8", newline="\n")


def read_json(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


# -- hypergraphs ------------------------------------------------------------


def hypergraph_to_dict(h: Hypergraph) -> dict:
    return {
        "vertices": list(h.vertices.labels),
        "edges": [list(e) for e in h.edges],
    }


def hypergraph_from_dict(d: dict) -> Hypergraph:
    return Hypergraph(
        Alphabet(tuple(d["vertices"])),
        tuple(tuple(int(v) for v in e) for e in d["edges"]),
    )


# -- function tables ----------------------------------------------------------


def function_table_to_dict(f: FunctionTable) -> dict:
    return {
        "domain": list(f.domain.labels),
        "codomain": list(f.codomain.labels),
        "map": list(f.mapping),
    }


def function_table_from_dict(d: dict) -> FunctionTable:
    return FunctionTable(
        Alphabet(tuple(d["domain"])),
        Alphabet(tuple(d["codomain"])),
        tuple(int(i) for i in d["map"]),
    )


# -- channels -----------------------------------------------------------------


def channel_to_dict(c: Channel) -> dict:
    return {
        "input": list(c.input.labels),
        "output": list(c.output.labels),
        "rows": c.rows.tolist(),
    }


def channel_from_dict(d: dict) -> Channel:
    return Channel(
        Alphabet(tuple(d["input"])),
        Alphabet(tuple(d["output"])),
        np.array(d["rows"], dtype=np.float64),
    )


# -- edge maps ----------------------------------------------------------------


def edge_map_to_dict(m: EdgeMap) -> dict:
    return {
        "source_edges": m.source_count,
        "target_edges": m.target_count,
        "map": list(m.mapping),
    }


def edge_map_from_dict(d: dict) -> EdgeMap:
    return EdgeMap(
        int(d["source_edges"]),
        int(d["target_edges"]),
        tuple(int(i) for i in d["map"]),
    )


# -- certificates -------------------------------------------------------------


def certificate_to_dict(cert: LhcCertificate) -> dict:
    return {
        "edge_map": edge_map_to_dict(cert.edge_map),
        "lambda": [float(x) for x in cert.lam],
        "per_vertex_success": [
            None if np.isnan(p) else float(p) for p in cert.per_vertex_success
        ],
        "verdict": cert.verdict,
        "edge_bijective": cert.edge_bijective,
        "failing_edges": list(cert.failing_edges),
    }


def certificate_from_dict(d: dict) -> LhcCertificate:
    return LhcCertificate(
        edge_map=edge_map_from_dict(d["edge_map"]),
        lam=np.array(d["lambda"], dtype=np.float64),
        per_vertex_success=np.array(
            [np.nan if p is None else p for p in d["per_vertex_success"]],
            dtype=np.float64,
        ),
        passed=d["verdict"] == "pass",
        edge_bijective=bool(d["edge_bijective"]),
        failing_edges=tuple(int(e) for e in d["failing_edges"]),
    )


# -- code bundles (components by reference) -----------------------------------


def write_code_bundle(path, code: FunctionCode, prefix: str | None = None) -> None:
    """Write the four components next to the bundle file, referenced by name."""
    path = Path(path)
    stem = prefix if prefix is not None else path.stem
    parts = {
        "encoder": (f"{stem}.encoder.json", channel_to_dict(code.encoder)),
        "decoder": (f"{stem}.decoder.json", channel_to_dict(code.decoder)),
        "function": (f"{stem}.function.json", function_table_to_dict(code.f)),
        "channel": (f"{stem}.channel.json", channel_to_dict(code.channel)),
    }
    for name, payload in parts.values():
        write_json(path.parent / name, payload)
    write_json(path, {key: name for key, (name, _) in parts.items()})


def read_code_bundle(path) -> FunctionCode:
    path = Path(path)
    refs = read_json(path)
    for key in ("encoder", "decoder", "function", "channel"):
        if key not in refs:
            raise ShapeError(f"code bundle misses component {key!r}")
    return FunctionCode(
        encoder=channel_from_dict(read_json(path.parent / refs["encoder"])),
        decoder=channel_from_dict(read_json(path.parent / refs["decoder"])),
        f=function_table_from_dict(read_json(path.parent / refs["function"])),
        channel=channel_from_dict(read_json(path.parent / refs["channel"])),
    )


# -- codebooks ----------------------------------------------------------------


def write_codebook(path, book: Codebook) -> None:
    lines = [f"# n={book.n} d={book.dmin}"] + list(book.words)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_codebook(path, delta: float | None = None) -> Codebook:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("# n="):
        raise ShapeError("codebook file must start with a '# n=<n> d=<dmin>' header")
    head = dict(part.split("=") for part in lines[0][2:].split())
    n, dmin = int(head["n"]), int(head["d"])
    words = tuple(line.strip() for line in lines[1:] if line.strip())
    return Codebook(n=n, words=words, delta=dmin / n if delta is None else delta,
                    dmin=dmin)


# -- branch-swap instances and counterexample dumps ---------------------------


def instance_to_dict(inst: BipartiteInstance) -> dict:
    return {
        "a1": list(inst.a1.labels),
        "a2": list(inst.a2.labels),
        "x1": list(inst.x1.labels),
        "x2": list(inst.x2.labels),
        "hyper_h": hypergraph_to_dict(inst.hyper_h),
        "hyper_g": hypergraph_to_dict(inst.hyper_g),
        "hyper_i": hypergraph_to_dict(inst.hyper_i),
        "hyper_f": hypergraph_to_dict(inst.hyper_f),
        "phi": channel_to_dict(inst.phi),
        "lambda": [float(x) for x in inst.lam],
    }


def instance_from_dict(d: dict) -> BipartiteInstance:
    return BipartiteInstance(
        a1=Alphabet(tuple(d["a1"])),
        a2=Alphabet(tuple(d["a2"])),
        x1=Alphabet(tuple(d["x1"])),
        x2=Alphabet(tuple(d["x2"])),
        hyper_h=hypergraph_from_dict(d["hyper_h"]),
        hyper_g=hypergraph_from_dict(d["hyper_g"]),
        hyper_i=hypergraph_from_dict(d["hyper_i"]),
        hyper_f=hypergraph_from_dict(d["hyper_f"]),
        phi=channel_from_dict(d["phi"]),
        lam=np.array(d["lambda"], dtype=np.float64),
    )


def counterexample_to_dict(report: BranchSwapReport) -> dict:
    return {
        "instance": instance_to_dict(report.instance),
        "hypothesis_holds": report.hypothesis_holds,
        "conclusion_holds": report.conclusion_holds,
        "hypothesis_map": edge_map_to_dict(report.hypothesis_map),
        "conclusion_map": edge_map_to_dict(report.conclusion_map),
        "hypothesis_profile": [float(x) for x in report.hypothesis_profile],
        "conclusion_profile": [float(x) for x in report.conclusion_profile],
    }


# -- CSV ----------------------------------------------------------------------


def write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(x) if isinstance(x, float) else x for x in row])
