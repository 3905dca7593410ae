"""Regenerate the FCIDUMP fixtures used by the test suite (requires pyscf).

Usage: python3 tools/make_fixtures.py tests/fixtures
"""
import sys
from pyscf import gto, scf, fci
from pyscf.tools import fcidump

GEOMETRIES = {
    "h2_0.74": "H 0 0 0; H 0 0 0.74",
    "h4_chain_1.0": "H 0 0 0; H 0 0 1.0; H 0 0 2.0; H 0 0 3.0",
    "lih_1.5": "Li 0 0 0; H 0 0 1.5",
}

out = sys.argv[1] if len(sys.argv) > 1 else "."
for name, atom in GEOMETRIES.items():
    mol = gto.M(atom=atom, basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol).run()
    fcidump.from_scf(mf, f"{out}/{name}.fcidump", tol=1e-12)
    e_fci = fci.FCI(mf).kernel()[0]
    print(f"{name}: E_HF={mf.e_tot:.12f} E_FCI={e_fci:.12f}")
