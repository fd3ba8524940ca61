#!/usr/bin/env python3
"""Writes a Jordan-Wigner qubit Hamiltonian for H2 in the rvse text format.

Needs pyscf and openfermion. Spin orbitals are interleaved (2p = alpha,
2p+1 = beta of spatial orbital p) and qubit j carries spin orbital j.
"""
import argparse

import numpy as np
import openfermion as of
from pyscf import ao2mo, gto, scf


def molecular_hamiltonian(basis: str, bond: float) -> of.InteractionOperator:
    mol = gto.M(atom=f"H 0 0 0; H 0 0 {bond}", basis=basis, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol).run()
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    n = h1.shape[0]
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), n)
    # openfermion wants <pq|rs> ordering: two_body[p,q,r,s] = (ps|qr)
    two = np.asarray(eri.transpose(0, 2, 3, 1), order="C")
    one_so, two_so = of.chem.molecular_data.spinorb_from_spatial(h1, two)
    return of.InteractionOperator(mol.energy_nuc(), one_so, 0.5 * two_so), mf.e_tot


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--basis", default="6-31g")
    ap.add_argument("--bond", type=float, default=0.74)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    ham, e_hf = molecular_hamiltonian(args.basis, args.bond)
    qubit = of.jordan_wigner(ham)
    qubit.compress(1e-12)
    n = of.count_qubits(qubit)
    lines = [
        f"# H2 {args.basis} at {args.bond} A, Jordan-Wigner, {n} qubits",
        "# spin orbitals interleaved (2p alpha, 2p+1 beta); qubit j = spin orbital j",
        f"# RHF energy {e_hf:.12f}",
    ]
    for term, coeff in sorted(qubit.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
        word = ["I"] * n
        for q, p in term:
            word[q] = p
        assert abs(complex(coeff).imag) < 1e-12
        lines.append(f"{complex(coeff).real:.15g} {''.join(word)}")
    with open(args.out, "w") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
