#!/usr/bin/env python3
"""Regenerate the FCIDUMP fixtures under fixtures/.

Requires pyscf. Each file carries the RHF and FCI reference energies as
leading `# REF_HF=` / `# REF_FCI=` comment lines.
"""
import argparse
import os
import tempfile

from pyscf import fci, gto, scf
from pyscf.tools import fcidump


def linear_chain(n, spacing):
    return [("H", (0.0, 0.0, i * spacing)) for i in range(n)]


SYSTEMS = {
    "h2_0.7414": [("H", (0, 0, 0)), ("H", (0, 0, 0.7414))],
    "h4_1.5": linear_chain(4, 1.5),
    "h6_3.0": linear_chain(6, 3.0),
    "beh2_1.3264": [("Be", (0, 0, 0)), ("H", (0, 0, 1.3264)), ("H", (0, 0, -1.3264))],
    "beh2_3.0": [("Be", (0, 0, 0)), ("H", (0, 0, 3.0)), ("H", (0, 0, -3.0))],
}


def build(name, atoms, outdir):
    mol = gto.M(atom=atoms, basis="sto-3g", unit="Angstrom", symmetry=False, verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.max_cycle = 500
    mf.kernel()
    # Follow internal instabilities so the stretched geometries land on the
    # lowest RHF solution.
    for _ in range(5):
        mo = mf.stability()[0]
        if mo is mf.mo_coeff:
            break
        dm = mf.make_rdm1(mo, mf.mo_occ)
        mf.kernel(dm)
    assert mf.converged, name
    solver = fci.FCI(mf)
    solver.conv_tol = 1e-12
    e_fci, _ = solver.kernel()
    with tempfile.NamedTemporaryFile("r", suffix=".fcidump", delete=False) as tmp:
        path = tmp.name
    fcidump.from_scf(mf, path, tol=1e-14)
    with open(path) as fh:
        body = fh.read()
    os.unlink(path)
    out = os.path.join(outdir, name + ".fcidump")
    with open(out, "w") as fh:
        fh.write(f"# {name} STO-3G, RHF canonical orbitals\n")
        fh.write(f"# REF_HF={mf.e_tot:.12f}\n")
        fh.write(f"# REF_FCI={e_fci:.12f}\n")
        fh.write(body)
    print(f"{name}: norb={mol.nao} nelec={mol.nelectron} HF={mf.e_tot:.10f} FCI={e_fci:.10f}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "fixtures"))
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for name, atoms in SYSTEMS.items():
        build(name, atoms, args.out)


if __name__ == "__main__":
    main()
