import os
from pathlib import Path

import numpy as np
import pytest

from mgli.curves import hopf_link
from mgli.geometry import ParametricCurve, Polyline, sample_parametric

DATA = Path(__file__).parent / "data"

# Published Hopf-link matrices (4 decimals); rows are pieces of the first circle.
G1_REF = np.array([
    [-0.0640, -0.1413, -0.1413, -0.0640],
    [0.0193, -0.0640, -0.0640, 0.0193],
    [0.0193, -0.0640, -0.0640, 0.0193],
    [-0.0640, -0.1413, -0.1413, -0.0640],
])
G2_REF = np.array([
    [-0.0391, -0.0579, -0.1083, -0.1083, -0.0579, -0.0391],
    [0.0137, 0.0069, -0.0653, -0.0653, 0.0069, 0.0137],
    [0.0137, 0.0069, -0.0653, -0.0653, 0.0069, 0.0137],
    [-0.0391, -0.0579, -0.1083, -0.1083, -0.0579, -0.0391],
])


def straight(p, q):
    p, q = np.asarray(p, float), np.asarray(q, float)
    return ParametricCurve(lambda t: p + t[..., None] * (q - p),
                           derivative=lambda t: np.broadcast_to(q - p, np.shape(t) + (3,)))


def random_walk(rng, n, step=1.0, offset=(0.0, 0.0, 0.0), closed=False):
    return Polyline(np.cumsum(rng.normal(0, step, (n, 3)), axis=0) + np.asarray(offset), closed)


def random_closed_curve(rng, n=40, center=(0.0, 0.0, 0.0), radius=1.0, wobble=0.3):
    """Star-shaped wobbly closed loop around ``center``."""
    t = np.arange(n) / n * 2 * np.pi
    r = radius * (1 + wobble * rng.uniform(-1, 1, n))
    z = wobble * rng.uniform(-1, 1, n)
    pts = np.stack([r * np.cos(t), r * np.sin(t), z], axis=1)
    return Polyline(pts + np.asarray(center), closed=True)


def pdb_text(coords, bfactors, chain="A", start=1, header_id="TEST", extra_atoms=True):
    """Minimal PDB text with N, CA, C atoms per residue."""
    lines = [f"{'HEADER    SYNTHETIC PROTEIN':<50s}01-JAN-00   {header_id:<4s}"]
    serial = 1
    for k, (xyz, b) in enumerate(zip(coords, bfactors)):
        res = start + k
        atoms = [("N", -0.5), ("CA", 0.0), ("C", 0.5)] if extra_atoms else [("CA", 0.0)]
        for name, dx in atoms:
            x, y, z = xyz[0] + dx, xyz[1], xyz[2]
            lines.append(
                f"ATOM  {serial:5d} {name:<4s} ALA {chain}{res:4d}    "
                f"{x:8.3f}{y:8.3f}{z:8.3f}{1.0:6.2f}{b:6.2f}           {name[0]}")
            serial += 1
    lines.append(f"TER   {serial:5d}      ALA {chain}{start + len(coords) - 1:4d}")
    lines.append("END")
    return "\n".join(lines) + "\n"


def synthetic_chain_coords(rng, n):
    """Helix-like C-alpha trace with roughly 3.8 A pseudobonds."""
    t = np.arange(n)
    coords = np.stack([2.3 * np.cos(1.75 * t), 2.3 * np.sin(1.75 * t), 1.5 * t], axis=1)
    # fold the helix back on itself every 20 residues so distant contacts exist
    coords[:, 0] += 8.0 * np.sin(t / 20.0 * np.pi)
    coords[:, 2] = 12.0 * np.cos(t / 20.0 * np.pi) + 0.2 * t
    return np.round(coords + rng.normal(0, 0.3, coords.shape), 3)


@pytest.fixture
def rng():
    return np.random.default_rng(20231014)


@pytest.fixture(scope="session")
def hopf():
    return hopf_link()


@pytest.fixture(scope="session")
def hopf_polylines():
    c1, c2 = hopf_link()
    return sample_parametric(c1, 1000), sample_parametric(c2, 1000)


def pdb_path(pdb_id):
    """Location of a real test structure, or None if it isn't available."""
    for root in filter(None, [os.environ.get("MGLI_PDB_DIR"), str(DATA)]):
        for name in (f"{pdb_id}.pdb", f"{pdb_id.lower()}.pdb", f"pdb{pdb_id.lower()}.ent"):
            p = Path(root) / name
            if p.exists():
                return p
    return None


# ------------------------------------------------------- acceptance summary

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {msg}")
