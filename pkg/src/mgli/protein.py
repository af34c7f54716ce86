"""PDB C-alpha extraction and the residue-induced backbone segmentation."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from mgli.errors import DegenerateGeometryError, InvalidArgumentError, NotFoundError, PDBParseError
from mgli.geometry import Polyline, Segmentation, Structure, _cut_component
from mgli.gli import segmentation_matrix
from mgli.multiscale import FeatureMatrix, ScaleScheme, localized_features

__all__ = ["ProteinChain", "parse_pdb_ca", "read_pdb", "protein_segmentation", "protein_features"]

DEFAULT_SCHEME = "5:27:1"


@dataclass(frozen=True, eq=False)
class ProteinChain:
    """C-alpha trace of one chain, in file order."""

    chain_id: str
    res_seq: np.ndarray
    insertion_codes: list
    res_names: list
    coords: np.ndarray
    bfactors: np.ndarray
    pdb_id: str = ""

    def __post_init__(self):
        if len(self.coords) < 2:
            raise InvalidArgumentError("a protein chain needs at least 2 residues")
        if not (np.all(np.isfinite(self.coords)) and np.all(np.isfinite(self.bfactors))):
            raise InvalidArgumentError("coordinates and B-factors must be finite")

    def __len__(self):
        return len(self.coords)

    @property
    def residue_ids(self) -> list[str]:
        return [f"{self.chain_id}:{n}{ic}".rstrip() for n, ic in zip(self.res_seq, self.insertion_codes)]


def _field(line, lo, hi, what, lineno, kind=float):
    raw = line[lo:hi]
    try:
        return kind(raw)
    except ValueError:
        raise PDBParseError(f"malformed {what} field {raw!r}", lineno) from None


def parse_pdb_ca(text: str, chain: str | None = None, pdb_id: str = "") -> ProteinChain:
    """Extract the C-alpha atoms of one chain from PDB-format text.

    Only ``ATOM`` records of the first model are read; ``HETATM`` records
    are skipped. Alternate locations other than blank and ``A`` are
    dropped, and a repeated residue keeps its first C-alpha. Reading stops
    at the selected chain's ``TER`` or at ``ENDMDL``. With ``chain=None``
    the first chain holding an ``ATOM`` record is used.

    Raises
    ------
    NotFoundError
        No C-alpha atom for the requested chain.
    PDBParseError
        A numeric column could not be parsed (message carries the line).
    """
    if not pdb_id:
        for line in text.splitlines():
            if line.startswith("HEADER") and len(line) >= 66:
                pdb_id = line[62:66].strip()
                break
    rows = []
    seen = set()
    selected = chain
    in_chain = False
    models_started = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        record = line[:6]
        if record.startswith("MODEL"):
            models_started += 1
            if models_started > 1:
                break
            continue
        if record.startswith("ENDMDL"):
            break
        if record.startswith("TER"):
            ter_chain = line[21] if len(line) > 21 else " "
            if in_chain and (ter_chain == " " or ter_chain == selected):
                break
            continue
        if record != "ATOM  ":
            continue
        chain_id = line[21] if len(line) > 21 else " "
        if selected is None:
            selected = chain_id
        if chain_id != selected:
            if in_chain:
                # chain ended without a TER record
                break
            continue
        in_chain = True
        if line[12:16].strip() != "CA" or line[16] not in (" ", "A"):
            continue
        res_seq = _field(line, 22, 26, "residue number", lineno, int)
        icode = line[26] if len(line) > 26 else " "
        key = (res_seq, icode)
        if key in seen:
            continue
        seen.add(key)
        xyz = [_field(line, lo, hi, axis, lineno) for lo, hi, axis in
               ((30, 38, "x"), (38, 46, "y"), (46, 54, "z"))]
        bfac = _field(line, 60, 66, "B-factor", lineno)
        rows.append((res_seq, icode.strip(), line[17:20].strip(), xyz, bfac))

    if not rows:
        which = f"chain {chain!r}" if chain is not None else "any chain"
        raise NotFoundError(f"no C-alpha atoms found for {which}")
    res_seq = np.array([r[0] for r in rows])
    steps = np.diff(res_seq)
    gaps = [f"{a}-{b}" for a, b, s in zip(res_seq[:-1], res_seq[1:], steps) if s > 1]
    if gaps:
        warnings.warn(f"chain {selected}: residue gaps bridged by straight pseudobonds: "
                      + ", ".join(gaps), stacklevel=2)
    if np.any(steps < 0):
        warnings.warn(f"chain {selected}: residue numbering decreases; file order kept", stacklevel=2)
    return ProteinChain(
        chain_id=selected,
        res_seq=res_seq,
        insertion_codes=[r[1] for r in rows],
        res_names=[r[2] for r in rows],
        coords=np.array([r[3] for r in rows], dtype=float),
        bfactors=np.array([r[4] for r in rows], dtype=float),
        pdb_id=pdb_id,
    )


def read_pdb(path, chain: str | None = None) -> ProteinChain:
    path = Path(path)
    result = parse_pdb_ca(path.read_text(errors="replace"), chain)
    if not result.pdb_id:
        object.__setattr__(result, "pdb_id", path.stem.upper())
    return result


def protein_segmentation(chain: ProteinChain) -> Segmentation:
    """One segment per residue along the open C-alpha polygon.

    Segment ``i`` runs from the midpoint of pseudobond ``(i-1, i)`` to the
    midpoint of ``(i, i+1)``; the end segments stop at the termini. The
    representative point of each segment is its C-alpha atom.
    """
    try:
        backbone = Polyline(chain.coords, closed=False)
    except DegenerateGeometryError:
        raise DegenerateGeometryError(
            f"chain {chain.chain_id} has coincident consecutive C-alpha atoms") from None
    cum = backbone.cumulative_length
    cuts = np.concatenate([[0.0], 0.5 * (cum[:-1] + cum[1:]), [cum[-1]]])
    name = chain.chain_id
    structure = Structure({name: backbone})
    segments = _cut_component(backbone, name, cuts, representatives=chain.coords,
                              labels=chain.residue_ids)
    return Segmentation(structure, segments)


def protein_features(chain: ProteinChain, scheme: ScaleScheme | str = DEFAULT_SCHEME,
                     mode: str = "absolute", threads: int | None = None) -> FeatureMatrix:
    """mGLI features of every residue from the chain's self-segmentation matrix."""
    if isinstance(scheme, str):
        scheme = ScaleScheme.parse(scheme)
    seg = protein_segmentation(chain)
    g = segmentation_matrix(seg, seg, mode=mode, threads=threads)
    return localized_features(g, scheme)
