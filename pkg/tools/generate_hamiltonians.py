"""Offline generator for the bundled molecular Hamiltonian data files.

Produces the Pauli-sum text files in src/rlqas/data/ together with their
companion reference-energy files.  This script is *not* part of the installed
package: the library ingests the generated files as plain data and never
performs electronic-structure work at runtime.

Pipeline, all in minimal (STO-3G) basis:
  1. one- and two-electron integrals (McMurchie-Davidson scheme),
  2. restricted Hartree-Fock,
  3. frozen-core / active-space reduction,
  4. second-quantized Hamiltonian assembled as a dense matrix from
     Jordan-Wigner mode operators (qubit q <-> amplitude-index bit q),
  5. decomposition into Pauli strings; optionally a parity-basis change
     plus removal of the two conserved-parity qubits,
  6. exact ground energy by dense diagonalization, written to the .ref file.

Run:  python tools/generate_hamiltonians.py [outdir]
"""

import sys
from dataclasses import dataclass
from itertools import product
from pathlib import Path

import numpy as np
from scipy.special import hyp1f1

ANGSTROM_TO_BOHR = 1.8897259886

# ---------------------------------------------------------------------------
# Gaussian integrals (McMurchie-Davidson)
# ---------------------------------------------------------------------------


def boys(m, t):
    return hyp1f1(m + 0.5, m + 1.5, -t) / (2.0 * m + 1.0)


def hermite_e(i, j, t, qx, a, b):
    """Hermite expansion coefficient E_t^{ij} for a Gaussian product."""
    p = a + b
    mu = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return np.exp(-mu * qx * qx)
    if j == 0:
        return (
            hermite_e(i - 1, j, t - 1, qx, a, b) / (2 * p)
            - (mu * qx / a) * hermite_e(i - 1, j, t, qx, a, b)
            + (t + 1) * hermite_e(i - 1, j, t + 1, qx, a, b)
        )
    return (
        hermite_e(i, j - 1, t - 1, qx, a, b) / (2 * p)
        + (mu * qx / b) * hermite_e(i, j - 1, t, qx, a, b)
        + (t + 1) * hermite_e(i, j - 1, t + 1, qx, a, b)
    )


def overlap_prim(a, lmn1, pa, b, lmn2, pb):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    s1 = hermite_e(l1, l2, 0, pa[0] - pb[0], a, b)
    s2 = hermite_e(m1, m2, 0, pa[1] - pb[1], a, b)
    s3 = hermite_e(n1, n2, 0, pa[2] - pb[2], a, b)
    return s1 * s2 * s3 * (np.pi / (a + b)) ** 1.5


def kinetic_prim(a, lmn1, pa, b, lmn2, pb):
    l2, m2, n2 = lmn2
    term0 = b * (2 * (l2 + m2 + n2) + 3) * overlap_prim(a, lmn1, pa, b, lmn2, pb)
    term1 = (
        -2
        * b
        * b
        * (
            overlap_prim(a, lmn1, pa, b, (l2 + 2, m2, n2), pb)
            + overlap_prim(a, lmn1, pa, b, (l2, m2 + 2, n2), pb)
            + overlap_prim(a, lmn1, pa, b, (l2, m2, n2 + 2), pb)
        )
    )
    term2 = -0.5 * (
        l2 * (l2 - 1) * overlap_prim(a, lmn1, pa, b, (l2 - 2, m2, n2), pb)
        + m2 * (m2 - 1) * overlap_prim(a, lmn1, pa, b, (l2, m2 - 2, n2), pb)
        + n2 * (n2 - 1) * overlap_prim(a, lmn1, pa, b, (l2, m2, n2 - 2), pb)
    )
    return term0 + term1 + term2


def hermite_coulomb(t, u, v, n, p, pc):
    """Auxiliary integral R^n_{tuv} over a Hermite Gaussian at distance pc."""
    if t == u == v == 0:
        r2 = pc[0] ** 2 + pc[1] ** 2 + pc[2] ** 2
        return (-2.0 * p) ** n * boys(n, p * r2)
    if t > 0:
        val = 0.0
        if t > 1:
            val += (t - 1) * hermite_coulomb(t - 2, u, v, n + 1, p, pc)
        val += pc[0] * hermite_coulomb(t - 1, u, v, n + 1, p, pc)
        return val
    if u > 0:
        val = 0.0
        if u > 1:
            val += (u - 1) * hermite_coulomb(t, u - 2, v, n + 1, p, pc)
        val += pc[1] * hermite_coulomb(t, u - 1, v, n + 1, p, pc)
        return val
    val = 0.0
    if v > 1:
        val += (v - 1) * hermite_coulomb(t, u, v - 2, n + 1, p, pc)
    val += pc[2] * hermite_coulomb(t, u, v - 1, n + 1, p, pc)
    return val


def nuclear_prim(a, lmn1, pa, b, lmn2, pb, pc):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    p = a + b
    pp = (a * np.asarray(pa) + b * np.asarray(pb)) / p
    val = 0.0
    for t in range(l1 + l2 + 1):
        et = hermite_e(l1, l2, t, pa[0] - pb[0], a, b)
        if et == 0.0:
            continue
        for u in range(m1 + m2 + 1):
            eu = hermite_e(m1, m2, u, pa[1] - pb[1], a, b)
            if eu == 0.0:
                continue
            for v in range(n1 + n2 + 1):
                ev = hermite_e(n1, n2, v, pa[2] - pb[2], a, b)
                if ev == 0.0:
                    continue
                val += et * eu * ev * hermite_coulomb(t, u, v, 0, p, pp - np.asarray(pc))
    return 2.0 * np.pi / p * val


def eri_prim(a, lmn1, pa, b, lmn2, pb, c, lmn3, pc, d, lmn4, pd):
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    l3, m3, n3 = lmn3
    l4, m4, n4 = lmn4
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    pp = (a * np.asarray(pa) + b * np.asarray(pb)) / p
    qq = (c * np.asarray(pc) + d * np.asarray(pd)) / q
    pq = pp - qq
    val = 0.0
    for t in range(l1 + l2 + 1):
        e1t = hermite_e(l1, l2, t, pa[0] - pb[0], a, b)
        if e1t == 0.0:
            continue
        for u in range(m1 + m2 + 1):
            e1u = hermite_e(m1, m2, u, pa[1] - pb[1], a, b)
            if e1u == 0.0:
                continue
            for v in range(n1 + n2 + 1):
                e1v = hermite_e(n1, n2, v, pa[2] - pb[2], a, b)
                if e1v == 0.0:
                    continue
                for tau in range(l3 + l4 + 1):
                    e2t = hermite_e(l3, l4, tau, pc[0] - pd[0], c, d)
                    if e2t == 0.0:
                        continue
                    for nu in range(m3 + m4 + 1):
                        e2u = hermite_e(m3, m4, nu, pc[1] - pd[1], c, d)
                        if e2u == 0.0:
                            continue
                        for phi in range(n3 + n4 + 1):
                            e2v = hermite_e(n3, n4, phi, pc[2] - pd[2], c, d)
                            if e2v == 0.0:
                                continue
                            val += (
                                e1t
                                * e1u
                                * e1v
                                * e2t
                                * e2u
                                * e2v
                                * (-1.0) ** (tau + nu + phi)
                                * hermite_coulomb(t + tau, u + nu, v + phi, 0, alpha, pq)
                            )
    return val * 2.0 * np.pi**2.5 / (p * q * np.sqrt(p + q))


def prim_norm(a, lmn):
    l, m, n = lmn
    df = lambda k: float(np.prod(np.arange(2 * k - 1, 0, -2))) if k > 0 else 1.0
    return (
        (2.0 * a / np.pi) ** 0.75
        * (4.0 * a) ** ((l + m + n) / 2.0)
        / np.sqrt(df(l) * df(m) * df(n))
    )


@dataclass
class ContractedGaussian:
    center: np.ndarray
    lmn: tuple
    exps: list
    coefs: list

    def __post_init__(self):
        self.norms = [prim_norm(a, self.lmn) for a in self.exps]
        # scale the contraction to unit self-overlap
        s = 0.0
        for ai, ci, ni in zip(self.exps, self.coefs, self.norms):
            for aj, cj, nj in zip(self.exps, self.coefs, self.norms):
                s += ci * cj * ni * nj * overlap_prim(ai, self.lmn, self.center, aj, self.lmn, self.center)
        self.scale = 1.0 / np.sqrt(s)


def contracted(op, bf1, bf2, *extra):
    val = 0.0
    for a, ca, na in zip(bf1.exps, bf1.coefs, bf1.norms):
        for b, cb, nb in zip(bf2.exps, bf2.coefs, bf2.norms):
            val += ca * cb * na * nb * op(a, bf1.lmn, bf1.center, b, bf2.lmn, bf2.center, *extra)
    return val * bf1.scale * bf2.scale


def contracted_eri(b1, b2, b3, b4):
    val = 0.0
    for a, ca, na in zip(b1.exps, b1.coefs, b1.norms):
        for b, cb, nb in zip(b2.exps, b2.coefs, b2.norms):
            for c, cc, nc in zip(b3.exps, b3.coefs, b3.norms):
                for d, cd, nd in zip(b4.exps, b4.coefs, b4.norms):
                    val += (
                        ca * cb * cc * cd * na * nb * nc * nd
                        * eri_prim(a, b1.lmn, b1.center, b, b2.lmn, b2.center,
                                   c, b3.lmn, b3.center, d, b4.lmn, b4.center)
                    )
    return val * b1.scale * b2.scale * b3.scale * b4.scale


# ---------------------------------------------------------------------------
# STO-3G basis data (exponents and contraction coefficients)
# ---------------------------------------------------------------------------

STO3G = {
    "H": [
        ("s", [3.425250914, 0.6239137298, 0.1688554040],
              [0.1543289673, 0.5353281423, 0.4446345422]),
    ],
    "Li": [
        ("s", [16.11957475, 2.936200663, 0.7946504870],
              [0.1543289673, 0.5353281423, 0.4446345422]),
        ("s", [0.6362897469, 0.1478600533, 0.0480886784],
              [-0.09996722919, 0.3995128261, 0.7001154689]),
        ("p", [0.6362897469, 0.1478600533, 0.0480886784],
              [0.1559162750, 0.6076837186, 0.3919573931]),
    ],
    "Be": [
        ("s", [30.16787069, 5.495115306, 1.487192653],
              [0.1543289673, 0.5353281423, 0.4446345422]),
        ("s", [1.314833110, 0.3055389383, 0.0993707456],
              [-0.09996722919, 0.3995128261, 0.7001154689]),
        ("p", [1.314833110, 0.3055389383, 0.0993707456],
              [0.1559162750, 0.6076837186, 0.3919573931]),
    ],
}

CHARGES = {"H": 1, "Li": 3, "Be": 4}


def build_basis(atoms):
    """atoms: list of (symbol, xyz in bohr). Returns contracted functions."""
    fns = []
    for sym, xyz in atoms:
        for kind, exps, coefs in STO3G[sym]:
            if kind == "s":
                fns.append(ContractedGaussian(np.asarray(xyz, float), (0, 0, 0), exps, coefs))
            else:
                for lmn in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
                    fns.append(ContractedGaussian(np.asarray(xyz, float), lmn, exps, coefs))
    return fns


def integrals(atoms):
    fns = build_basis(atoms)
    n = len(fns)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = contracted(overlap_prim, fns[i], fns[j])
            T[i, j] = T[j, i] = contracted(kinetic_prim, fns[i], fns[j])
            v = 0.0
            for sym, xyz in atoms:
                v -= CHARGES[sym] * contracted(nuclear_prim, fns[i], fns[j], np.asarray(xyz, float))
            V[i, j] = V[j, i] = v
    eri = np.zeros((n, n, n, n))
    # chemists' notation (ij|kl) with 8-fold symmetry
    for i in range(n):
        for j in range(i + 1):
            for k in range(n):
                for l in range(k + 1):
                    if (i * (i + 1) // 2 + j) < (k * (k + 1) // 2 + l):
                        continue
                    val = contracted_eri(fns[i], fns[j], fns[k], fns[l])
                    for a, b in ((i, j), (j, i)):
                        for c, d in ((k, l), (l, k)):
                            eri[a, b, c, d] = val
                            eri[c, d, a, b] = val
    e_nuc = 0.0
    for a in range(len(atoms)):
        for b in range(a):
            za, ra = CHARGES[atoms[a][0]], np.asarray(atoms[a][1], float)
            zb, rb = CHARGES[atoms[b][0]], np.asarray(atoms[b][1], float)
            e_nuc += za * zb / np.linalg.norm(ra - rb)
    return S, T, V, eri, e_nuc


# ---------------------------------------------------------------------------
# Restricted Hartree-Fock
# ---------------------------------------------------------------------------


def rhf(S, Hcore, eri, n_elec, e_nuc, max_iter=200, tol=1e-12):
    n = S.shape[0]
    n_occ = n_elec // 2
    w, U = np.linalg.eigh(S)
    X = U @ np.diag(w**-0.5) @ U.T
    F = Hcore.copy()
    P = np.zeros((n, n))
    e_old = 0.0
    for it in range(max_iter):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Cocc = C[:, :n_occ]
        P = 2.0 * Cocc @ Cocc.T
        J = np.einsum("ijkl,kl->ij", eri, P)
        K = np.einsum("ikjl,kl->ij", eri, P)
        F = Hcore + J - 0.5 * K
        e_elec = 0.5 * np.sum(P * (Hcore + F))
        if abs(e_elec - e_old) < tol and it > 1:
            break
        e_old = e_elec
    return e_elec + e_nuc, C, eps


def mo_integrals(Hcore, eri, C):
    h = C.T @ Hcore @ C
    # chemists' (pq|rs) transform
    g = np.einsum("up,vq,lr,ts,uvlt->pqrs", C, C, C, C, eri, optimize=True)
    return h, g


def active_space(h, g, e_nuc, core, active):
    """Fold frozen-core orbitals into constants/effective one-body terms.

    h, g are spatial MO integrals with g in chemists' notation (pq|rs).
    Returns (e_offset, h_act, g_act) over the `active` orbital list.
    """
    e_core = e_nuc
    for i in core:
        e_core += 2.0 * h[i, i]
        for j in core:
            e_core += 2.0 * g[i, i, j, j] - g[i, j, j, i]
    na = len(active)
    h_act = np.zeros((na, na))
    for a, p in enumerate(active):
        for b, q in enumerate(active):
            v = h[p, q]
            for i in core:
                v += 2.0 * g[p, q, i, i] - g[p, i, i, q]
            h_act[a, b] = v
    g_act = g[np.ix_(active, active, active, active)]
    return e_core, h_act, g_act


# ---------------------------------------------------------------------------
# Dense second quantization, Jordan-Wigner convention: mode p <-> index bit p
# ---------------------------------------------------------------------------


def annihilation_ops(n_modes):
    sm = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|
    z = np.array([[1, 0], [0, -1]], dtype=complex)
    iden = np.eye(2, dtype=complex)
    ops = []
    for p in range(n_modes):
        factors = []
        for q in range(n_modes - 1, -1, -1):  # kron high bit first
            if q > p:
                factors.append(iden)
            elif q == p:
                factors.append(sm)
            else:
                factors.append(z)
        m = factors[0]
        for f in factors[1:]:
            m = np.kron(m, f)
        ops.append(m)
    return ops


def dense_hamiltonian(e_offset, h_act, g_act):
    """Spin-orbital dense H; alpha block = modes 0..m-1, beta = m..2m-1."""
    m = h_act.shape[0]
    n_modes = 2 * m
    a = annihilation_ops(n_modes)
    ad = [x.conj().T for x in a]
    dim = 2**n_modes
    H = e_offset * np.eye(dim, dtype=complex)
    spat = lambda P: P % m
    spin = lambda P: P // m
    for P in range(n_modes):
        for Q in range(n_modes):
            if spin(P) != spin(Q):
                continue
            hpq = h_act[spat(P), spat(Q)]
            if abs(hpq) > 1e-14:
                H += hpq * (ad[P] @ a[Q])
    # physicists' <PQ|RS> = (pr|qs) with spin matching P-R and Q-S
    for P in range(n_modes):
        for Q in range(n_modes):
            for R in range(n_modes):
                if spin(P) != spin(R):
                    continue
                for Sx in range(n_modes):
                    if spin(Q) != spin(Sx):
                        continue
                    v = g_act[spat(P), spat(R), spat(Q), spat(Sx)]
                    if abs(v) > 1e-14:
                        H += 0.5 * v * (ad[P] @ ad[Q] @ a[Sx] @ a[R])
    return H


# ---------------------------------------------------------------------------
# Pauli decomposition (exact, via permutation-phase form of Pauli strings)
# ---------------------------------------------------------------------------


def pauli_perm_phase(label, n):
    """perm, phase with (P psi)[i] = phase[i] * psi[perm[i]], bit q = qubit q."""
    idx = np.arange(2**n)
    flip = 0
    phase = np.ones(2**n, dtype=complex)
    for q, ch in enumerate(label):
        bit = (idx >> q) & 1
        if ch == "X":
            flip |= 1 << q
        elif ch == "Y":
            flip |= 1 << q
            phase = phase * np.where(bit == 0, -1j, 1j)
        elif ch == "Z":
            phase = phase * np.where(bit == 0, 1.0, -1.0)
    return idx ^ flip, phase


def pauli_decompose(H, n, tol=1e-12):
    dim = 2**n
    terms = []
    for combo in product("IXYZ", repeat=n):
        label = "".join(combo)  # label[q] acts on qubit q
        perm, phase = pauli_perm_phase(label, n)
        c = np.sum(phase * H[perm, np.arange(dim)]) / dim
        if abs(c.imag) > 1e-10:
            raise ValueError(f"non-Hermitian coefficient for {label}: {c}")
        if abs(c.real) > tol:
            terms.append((c.real, label))
    terms.sort(key=lambda t: t[1])
    return terms


def assemble(terms, n):
    dim = 2**n
    H = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim)
    for c, label in terms:
        perm, phase = pauli_perm_phase(label, n)
        M = np.zeros((dim, dim), dtype=complex)
        M[cols, perm] = phase
        H += c * M
    return H


# ---------------------------------------------------------------------------
# Parity basis change and two-qubit reduction (blocked spin ordering)
# ---------------------------------------------------------------------------


def parity_permutation(n_modes):
    dim = 2**n_modes
    perm = np.zeros(dim, dtype=int)
    for idx in range(dim):
        acc = 0
        out = 0
        for k in range(n_modes):
            acc ^= (idx >> k) & 1
            out |= acc << k
        perm[idx] = out
    return perm


def to_parity(H, n_modes):
    perm = parity_permutation(n_modes)
    U = np.zeros_like(H)
    U[perm, np.arange(H.shape[0])] = 1.0
    return U @ H @ U.conj().T


def reduce_parity_qubits(terms, n, drop, eigenvalues):
    """Remove conserved qubits carrying only I/Z, substituting Z eigenvalues."""
    out = {}
    for c, label in terms:
        f = c
        kept = []
        for q, ch in enumerate(label):
            if q in drop:
                if ch == "Z":
                    f *= eigenvalues[q]
                elif ch != "I":
                    raise ValueError(f"qubit {q} not conserved: term {label}")
            else:
                kept.append(ch)
        key = "".join(kept)
        out[key] = out.get(key, 0.0) + f
    terms = [(c, lab) for lab, c in out.items() if abs(c) > 1e-12]
    terms.sort(key=lambda t: t[1])
    return terms


# ---------------------------------------------------------------------------
# Drivers
# ---------------------------------------------------------------------------


def sector_energies(H, n_modes):
    """Ground energy per (N_alpha, N_beta) sector of the dense Hamiltonian."""
    m = n_modes // 2
    idx = np.arange(2**n_modes)
    na = np.zeros_like(idx)
    nb = np.zeros_like(idx)
    for k in range(m):
        na = na + ((idx >> k) & 1)
    for k in range(m, n_modes):
        nb = nb + ((idx >> k) & 1)
    out = {}
    for a_cnt in range(m + 1):
        for b_cnt in range(m + 1):
            mask = (na == a_cnt) & (nb == b_cnt)
            sub = H[np.ix_(mask, mask)]
            out[(a_cnt, b_cnt)] = float(np.linalg.eigvalsh(sub)[0])
    return out


def hf_bits_jw(m, n_alpha, n_beta):
    """Occupation bitstring of the reference determinant, alpha block first."""
    bits = ["0"] * (2 * m)
    for k in range(n_alpha):
        bits[k] = "1"
    for k in range(n_beta):
        bits[m + k] = "1"
    return "".join(bits)


def hf_bits_parity(m, n_alpha, n_beta, drop):
    occ = [int(b) for b in hf_bits_jw(m, n_alpha, n_beta)]
    parity = []
    acc = 0
    for k in range(2 * m):
        acc ^= occ[k]
        parity.append(acc)
    return "".join(str(parity[k]) for k in range(2 * m) if k not in drop)


def write_files(outdir, stem, terms, n_qubits, meta):
    path = outdir / f"{stem}.txt"
    lines = [f"# {k}: {v}" for k, v in meta.items()]
    lines.append(f"# n_qubits: {n_qubits}")
    for c, label in terms:
        lines.append(f"{float(c)!r} {label}")
    path.write_text("\n".join(lines) + "\n")
    H = assemble(terms, n_qubits)
    e0 = float(np.linalg.eigvalsh(H)[0])
    (outdir / f"{stem}.ref").write_text(f"exact_ground_energy={e0!r}\n")
    print(f"wrote {path.name}: {len(terms)} terms, {n_qubits} qubits, E0 = {e0:.10f}")
    return e0


def molecule_hamiltonian(atoms_ang, n_elec, core, active):
    atoms = [(s, np.asarray(xyz, float) * ANGSTROM_TO_BOHR) for s, xyz in atoms_ang]
    S, T, V, eri, e_nuc = integrals(atoms)
    e_hf, C, eps = rhf(S, T + V, eri, n_elec, e_nuc)
    h, g = mo_integrals(T + V, eri, C)
    e_off, h_act, g_act = active_space(h, g, e_nuc, core, active)
    H = dense_hamiltonian(e_off, h_act, g_act)
    return e_hf, H, 2 * len(active)


def pick_sigma_active(C, n_basis, pxy_rows, core, n_active):
    """Lowest non-core MOs that have no weight on the px/py AOs."""
    chosen = []
    for mo in range(n_basis):
        if mo in core:
            continue
        if np.max(np.abs(C[pxy_rows, mo])) > 1e-6:
            continue
        chosen.append(mo)
        if len(chosen) == n_active:
            return chosen
    raise RuntimeError("not enough sigma orbitals")


def main(outdir):
    outdir.mkdir(parents=True, exist_ok=True)

    # ---- H2, 4 spin orbitals, Jordan-Wigner --------------------------------
    geom = [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.7414))]
    e_hf, H, nq = molecule_hamiltonian(geom, n_elec=2, core=[], active=[0, 1])
    print(f"H2  RHF = {e_hf:.8f} Ha (literature STO-3G ~ -1.11671)")
    sectors = sector_energies(H, nq)
    print(f"H2  sector ground energies: {sectors}")
    terms = pauli_decompose(np.real_if_close(H), nq)
    write_files(outdir, "h2_4q_jw", terms, nq, {
        "molecule": "H2",
        "hf_state": hf_bits_jw(2, 1, 1),
        "basis": "sto-3g",
        "mapping": "jordan-wigner",
        "geometry": "H 0 0 0; H 0 0 0.7414 (angstrom)",
        "spin_orbital_order": "alpha block then beta block; qubit q is amplitude-index bit q",
    })

    # ---- LiH: RHF, sigma active space (2e, 3o) -----------------------------
    geom = [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 3.4))]
    atoms = [(s, np.asarray(x, float) * ANGSTROM_TO_BOHR) for s, x in geom]
    S, T, V, eri, e_nuc = integrals(atoms)
    e_hf, C, eps = rhf(S, T + V, eri, 4, e_nuc)
    print(f"LiH RHF = {e_hf:.8f} Ha at 3.4 A")
    # AO order: Li 1s, 2s, 2px, 2py, 2pz, H 1s -> px,py rows are 2,3
    active = pick_sigma_active(C, 6, [2, 3], core=[0], n_active=3)
    print(f"LiH active sigma MOs: {active}")
    h, g = mo_integrals(T + V, eri, C)
    e_off, h_act, g_act = active_space(h, g, e_nuc, [0], active)
    H = dense_hamiltonian(e_off, h_act, g_act)
    sectors = sector_energies(H, 6)
    print(f"LiH sector ground energies: {sectors}")
    terms = pauli_decompose(np.real_if_close(H), 6)
    write_files(outdir, "lih_6q_jw", terms, 6, {
        "molecule": "LiH",
        "hf_state": hf_bits_jw(3, 1, 1),
        "basis": "sto-3g",
        "mapping": "jordan-wigner",
        "geometry": "Li 0 0 0; H 0 0 3.4 (angstrom)",
        "active_space": "core MO frozen; 2 electrons in 3 sigma MOs",
        "spin_orbital_order": "alpha block then beta block; qubit q is amplitude-index bit q",
    })

    # ---- LiH, parity basis, two conserved qubits removed -> 4 qubits -------
    Hp = to_parity(H, 6)
    terms6 = pauli_decompose(np.real_if_close(Hp), 6)
    # blocked spins: qubit 2 carries alpha parity, qubit 5 total parity.
    # Sector (N_alpha, N_beta) = (1, 1): Z_2 -> -1, Z_5 -> +1.
    terms4 = reduce_parity_qubits(terms6, 6, drop={2, 5}, eigenvalues={2: -1.0, 5: +1.0})
    e0 = write_files(outdir, "lih_4q_parity", terms4, 4, {
        "molecule": "LiH",
        "hf_state": hf_bits_parity(3, 1, 1, {2, 5}),
        "basis": "sto-3g",
        "mapping": "parity, alpha- and total-parity qubits removed (sector N_alpha=1, N_beta=1)",
        "geometry": "Li 0 0 0; H 0 0 3.4 (angstrom)",
        "active_space": "core MO frozen; 2 electrons in 3 sigma MOs",
        "spin_orbital_order": "alpha block then beta block; qubit q is amplitude-index bit q",
    })
    print(f"LiH parity-reduced E0 {e0:.10f} vs sector (1,1) {sectors[(1, 1)]:.10f}")

    # ---- BeH2, sigma active space (4e in 3 MOs minus core) ------------------
    geom = [("H", (0.0, 0.0, -1.33)), ("Be", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.33))]
    atoms = [(s, np.asarray(x, float) * ANGSTROM_TO_BOHR) for s, x in geom]
    S, T, V, eri, e_nuc = integrals(atoms)
    e_hf, C, eps = rhf(S, T + V, eri, 6, e_nuc)
    print(f"BeH2 RHF = {e_hf:.8f} Ha")
    # AO order: H 1s, Be 1s, 2s, 2px, 2py, 2pz, H 1s -> px,py rows are 3,4
    active = pick_sigma_active(C, 7, [3, 4], core=[0], n_active=3)
    print(f"BeH2 active sigma MOs: {active}")
    h, g = mo_integrals(T + V, eri, C)
    e_off, h_act, g_act = active_space(h, g, e_nuc, [0], active)
    H = dense_hamiltonian(e_off, h_act, g_act)
    sectors = sector_energies(H, 6)
    print(f"BeH2 sector ground energies: {sectors}")
    terms = pauli_decompose(np.real_if_close(H), 6)
    write_files(outdir, "beh2_6q_jw", terms, 6, {
        "molecule": "BeH2",
        "hf_state": hf_bits_jw(3, 2, 2),
        "basis": "sto-3g",
        "mapping": "jordan-wigner",
        "geometry": "H 0 0 -1.33; Be 0 0 0; H 0 0 1.33 (angstrom)",
        "active_space": "core MO frozen; 4 electrons in 3 sigma MOs",
        "spin_orbital_order": "alpha block then beta block; qubit q is amplitude-index bit q",
    })


if __name__ == "__main__":
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[1] / "src" / "rlqas" / "data"
    main(out)
