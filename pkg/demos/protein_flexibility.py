"""
Residue flexibility from multiscale GLI features
================================================

Each residue owns the piece of C-alpha backbone between the midpoints of
its two pseudobonds. Summing that piece's absolute GLI against all other
pieces, bin by bin in C-alpha distance, gives a feature row per residue. A
linear fit on the reciprocal features then predicts B-factors.

Pass a PDB file on the command line, otherwise a synthetic chain is used.
"""

import sys

import numpy as np

from mgli import ProteinChain, fit_bfactor, protein_features, read_pdb

if len(sys.argv) > 1:
    chain = read_pdb(sys.argv[1], sys.argv[2] if len(sys.argv) > 2 else None)
else:
    # folded helix with B-factors that grow with distance from the core
    rng = np.random.default_rng(0)
    n = 120
    t = np.arange(n)
    coords = np.stack([2.3 * np.cos(1.75 * t) + 8 * np.sin(t * np.pi / 20),
                       2.3 * np.sin(1.75 * t),
                       12 * np.cos(t * np.pi / 20) + 0.2 * t], axis=1)
    coords += rng.normal(0, 0.3, coords.shape)
    centre = coords.mean(axis=0)
    b = 10 + 2 * np.linalg.norm(coords - centre, axis=1) + rng.normal(0, 2, n)
    chain = ProteinChain("A", t + 1, [""] * n, ["ALA"] * n, coords, b, "SYN")

features = protein_features(chain, "5:27:1")
print(f"{chain.pdb_id} chain {chain.chain_id}: {len(chain)} residues, "
      f"feature matrix {features.shape[0]} x {features.shape[1]}")

report = fit_bfactor(features, chain.bfactors)
print(f"Pearson r between fitted and experimental B-factors: {report.pearson_r:.4f} ({report.solver})")

# The most and least flexible residues according to the fit.
order = np.argsort(report.fitted)
print("predicted rigid   :", [chain.residue_ids[i] for i in order[:5]])
print("predicted flexible:", [chain.residue_ids[i] for i in order[-5:]])
