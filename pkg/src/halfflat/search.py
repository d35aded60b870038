"""Floating-point search for half-flat structures, with exact rationalization.

The closedness of rho is handled exactly: rho is parameterized in a basis
of the closed three-forms (computed by exact elimination and converted to
floats), so d rho = 0 holds to machine precision by construction.  The
remaining constraints are packed into a smooth penalty

    P = |d omega^2|^2 + |omega ^ rho|^2 + hinge(lambda sign)^2
        + sum_i hinge(margin - oriented eigenvalue_i)^2

minimized by L-BFGS-B with an analytic gradient under random restarts;
rho is normalized to unit length inside the objective to remove the scale
gauge.  A success is gated on the float residuals and on the eigenvalue
margin of the trace-normalized metric matrix, then optionally rationalized
by continued-fraction rounding and re-verified by the exact pipeline; the
float path never asserts existence on its own.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import numpy as np
from scipy.optimize import minimize

from . import stable
from .exterior import DIM, KForm, Vector, basis_masks, contract, kappa, wedge
from .liealg import LieAlgebra
from .verify import HalfFlatReport, verify

TARGET_KINDS = {
    "su3": (stable.KIND_SU3,),
    "su12": (stable.KIND_SU12, stable.KIND_SU21),
    "sl3r": (stable.KIND_SL3R,),
}


@dataclass
class SearchResult:
    """Outcome of one search run; coefficients are in the monomial bases."""

    found: bool
    target: str
    omega: np.ndarray | None = None
    rho: np.ndarray | None = None
    residuals: dict = field(default_factory=dict)
    seed: int = 0
    restarts_used: int = 0
    rationalized: tuple[KForm, KForm] | None = None
    exact_report: HalfFlatReport | None = None

    def to_text(self) -> str:
        lines = [
            f"found: {str(self.found).lower()}",
            f"target: {self.target}",
            f"seed: {self.seed}",
            f"restarts_used: {self.restarts_used}",
        ]
        for k, v in self.residuals.items():
            lines.append(f"{k}: {v:.3e}" if isinstance(v, float) else f"{k}: {v}")
        if self.found and self.omega is not None:
            lines.append("float omega: " + _fmt_vec(self.omega))
            lines.append("float rho:   " + _fmt_vec(self.rho))
        if self.rationalized is not None:
            lines.append(f"exact_omega: {self.rationalized[0]!r}")
            lines.append(f"exact_rho: {self.rationalized[1]!r}")
        return "\n".join(lines)


def _fmt_vec(v: np.ndarray) -> str:
    return "[" + ", ".join(f"{x: .6f}" for x in v) + "]"


class FloatKernels:
    """Dense float tensors mirroring the exact operations for one algebra."""

    def __init__(self, L: LieAlgebra):
        self.L = L
        self.b2 = basis_masks(2)
        self.b3 = basis_masks(3)
        self.b4 = basis_masks(4)
        self.b5 = basis_masks(5)
        self.i2 = {m: i for i, m in enumerate(self.b2)}
        self.i4 = {m: i for i, m in enumerate(self.b4)}
        self.i5 = {m: i for i, m in enumerate(self.b5)}
        self.d3 = self._d_matrix(3)
        self.d4 = self._d_matrix(4)
        self.w22 = self._wedge_tensor(self.b2, self.b2, self.i4)
        self.w23 = self._wedge_tensor(self.b2, self.b3, self.i5)
        self.kt = self._k_tensor()
        z3 = L.closed_forms(3).basis
        self.z3_exact = z3
        self.z3 = np.array(
            [[float(b.coeff(m)) for b in z3] for m in self.b3]
        )  # shape (20, dim Z3)

    def _d_matrix(self, k: int) -> np.ndarray:
        src = basis_masks(k)
        dst = basis_masks(k + 1)
        dst_i = {m: i for i, m in enumerate(dst)}
        out = np.zeros((len(dst), len(src)))
        for j, m in enumerate(src):
            img = self.L.d(KForm(k, {m: Fraction(1)}))
            for mm, c in img.terms.items():
                out[dst_i[mm], j] = float(c)
        return out

    @staticmethod
    def _wedge_tensor(ba, bb, out_index) -> np.ndarray:
        from .exterior import _SIGN

        out = np.zeros((len(ba), len(bb), len(out_index)))
        for i, ma in enumerate(ba):
            for j, mb in enumerate(bb):
                if ma & mb == 0:
                    out[i, j, out_index[ma | mb]] = _SIGN[(ma, mb)]
        return out

    def _k_tensor(self) -> np.ndarray:
        """T[u,v,i,j] with K_{uv}(rho) = sum T[u,v,i,j] rho_i rho_j."""
        out = np.zeros((DIM, DIM, len(self.b3), len(self.b3)))
        for v in range(DIM):
            ev = Vector.basis(v + 1)
            for i, mi in enumerate(self.b3):
                ci = contract(ev, KForm(3, {mi: Fraction(1)}))
                for j, mj in enumerate(self.b3):
                    prod = wedge(ci, KForm(3, {mj: Fraction(1)}))
                    if prod.is_zero():
                        continue
                    x, _ = kappa(prod)
                    for u in range(DIM):
                        c = float(x.components[u])
                        if c:
                            out[u, v, i, j] += c
        return out

    # -- float evaluations ------------------------------------------------

    def omega_matrix(self, w: np.ndarray) -> np.ndarray:
        m = np.zeros((DIM, DIM))
        for idx, mask in enumerate(self.b2):
            i = mask.bit_length() - 1
            j = (mask & ~(1 << i)).bit_length() - 1
            m[j, i] = w[idx]
            m[i, j] = -w[idx]
        return m

    def k_of(self, r: np.ndarray) -> np.ndarray:
        return np.einsum("uvij,i,j->uv", self.kt, r, r)

    def lam_of(self, r: np.ndarray) -> float:
        k = self.k_of(r)
        return float(np.trace(k @ k)) / 6.0

    def metric_raw(self, w: np.ndarray, r: np.ndarray, k: np.ndarray | None = None):
        k = self.k_of(r) if k is None else k
        lam = float(np.trace(k @ k)) / 6.0
        eps = stable.EPSILON_PARA if lam > 0 else stable.EPSILON
        return eps * (self.omega_matrix(w) @ k), lam


def _hinge(x: float) -> float:
    return x if x > 0 else 0.0


class _Penalty:
    """Smooth penalty and analytic gradient for one target kind."""

    def __init__(self, kern: FloatKernels, target: str, margin_opt: float = 1e-2):
        self.k = kern
        self.target = target
        self.margin_opt = margin_opt
        self.nz = kern.z3.shape[1]
        self.lam_gap = 1e-2

    def split(self, x: np.ndarray):
        return x[:15], x[15:]

    def value_grad(self, x: np.ndarray):
        kern = self.k
        w, z = self.split(x)
        rho_raw = kern.z3 @ z
        n = np.linalg.norm(rho_raw)
        if n < 1e-9:
            # degenerate rho: walk outward
            return 1e6 - float(z @ z), np.concatenate([np.zeros(15), -2 * z])
        r = rho_raw / n
        # projector for the normalization gauge, mapped back to z-space
        dr_dz = (np.eye(20) - np.outer(r, r)) @ kern.z3 / n

        grad_w = np.zeros(15)
        grad_z = np.zeros(self.nz)

        # omega scale gauge: keeps the two-form away from the trivial zero
        gauge = float(w @ w) - 1.0
        p0 = gauge * gauge
        grad_w += 4.0 * gauge * w

        # |d omega^2|^2
        q = np.einsum("ijm,i,j->m", kern.w22, w, w)
        r1 = kern.d4 @ q
        p1 = float(r1 @ r1)
        dq = 2.0 * (kern.d4.T @ r1)
        grad_w += 2.0 * np.einsum("m,ijm,j->i", dq, kern.w22, w)

        # |omega ^ rho|^2
        r2 = np.einsum("ijm,i,j->m", kern.w23, w, r)
        p2 = float(r2 @ r2)
        grad_w += 2.0 * np.einsum("m,ijm,j->i", r2, kern.w23, r)
        grad_r = 2.0 * np.einsum("m,ijm,i->j", r2, kern.w23, w)

        # lambda sign hinge
        kmat = np.einsum("uvij,i,j->uv", kern.kt, r, r)
        lam = float(np.trace(kmat @ kmat)) / 6.0
        dlam_dr = (
            np.einsum("vu,uvij,j->i", kmat, kern.kt, r)
            + np.einsum("vu,uvji,j->i", kmat, kern.kt, r)
        ) / 3.0
        if self.target in ("su3", "su12"):
            h = _hinge(lam + self.lam_gap)
            p3 = h * h
            if h > 0:
                grad_r += 2.0 * h * dlam_dr
        else:
            h = _hinge(self.lam_gap - lam)
            p3 = h * h
            if h > 0:
                grad_r -= 2.0 * h * dlam_dr

        # eigenvalue hinges on the symmetrized metric matrix
        eps = stable.EPSILON_PARA if lam > 0 else stable.EPSILON
        om = kern.omega_matrix(w)
        g = eps * (om @ kmat)
        s = 0.5 * (g + g.T)
        evals, evecs = np.linalg.eigh(s)
        scale = max(float(np.linalg.norm(s)), 1e-12)
        m0 = self.margin_opt * scale
        p4 = 0.0
        ds = np.zeros((DIM, DIM))
        wants = self._wanted_signs(evals)
        hsum = 0.0
        for idx in range(DIM):
            sgn = wants[idx]
            h = _hinge(m0 - sgn * evals[idx])
            if h > 0.0:
                p4 += h * h
                hsum += 2.0 * h
                ds -= 2.0 * h * sgn * np.outer(evecs[:, idx], evecs[:, idx])
        if hsum > 0.0:
            # the margin itself scales with |S|_F
            ds += hsum * self.margin_opt * s / scale
        if p4 > 0.0:
            # dS from omega: d g = eps * d omega_matrix @ K (antisymmetric slots)
            dg = eps * (ds @ kmat.T)
            for idx, mask in enumerate(kern.b2):
                i = mask.bit_length() - 1
                j = (mask & ~(1 << i)).bit_length() - 1
                grad_w[idx] += 0.5 * (dg[j, i] - dg[i, j]) * 2.0
            # dS from rho through K
            dk = eps * (om.T @ ds)
            grad_r += np.einsum("uv,uvij,j->i", dk, kern.kt, r) + np.einsum(
                "uv,uvji,j->i", dk, kern.kt, r
            )

        grad_z += dr_dz.T @ grad_r
        total = p0 + p1 + p2 + p3 + p4
        return total, np.concatenate([grad_w, grad_z])

    def _wanted_signs(self, evals: np.ndarray) -> np.ndarray:
        if self.target == "su3":
            sgn = 1.0 if float(np.sum(evals)) >= 0 else -1.0
            return np.full(DIM, sgn)
        order = np.argsort(evals)
        wants = np.empty(DIM)
        if self.target == "sl3r":
            neg = order[:3]
        else:  # su12: four of one sign, two of the other, cheapest branch
            neg_a, neg_b = order[:4], order[:2]
            cost_a = sum(max(0.0, evals[i]) for i in neg_a) + sum(
                max(0.0, -evals[i]) for i in order[4:]
            )
            cost_b = sum(max(0.0, evals[i]) for i in neg_b) + sum(
                max(0.0, -evals[i]) for i in order[2:]
            )
            neg = neg_a if cost_a <= cost_b else neg_b
        wants[:] = 1.0
        for i in neg:
            wants[i] = -1.0
        return wants


def find_halfflat(
    L: LieAlgebra,
    target: str = "su3",
    restarts: int = 10_000,
    seed: int = 0,
    tol: float = 1e-8,
    margin: float = 1e-4,
    max_iter: int = 600,
) -> SearchResult:
    """Random-restart penalty minimization for a half-flat pair on L.

    Restarts run sequentially with per-restart seeded streams, so the
    result is reproducible and independent of any scheduling.  The first
    restart whose polished minimum passes the float gate wins.
    """
    if target not in TARGET_KINDS:
        raise ValueError(f"target must be one of {sorted(TARGET_KINDS)}")
    kern = FloatKernels(L)
    if kern.z3.shape[1] == 0:
        return SearchResult(found=False, target=target, seed=seed)
    pen = _Penalty(kern, target)
    nvar = 15 + kern.z3.shape[1]
    for restart in range(restarts):
        rng = np.random.default_rng([seed, restart])
        x0 = rng.standard_normal(nvar)
        res = minimize(
            pen.value_grad,
            x0,
            jac=True,
            method="L-BFGS-B",
            options={"maxiter": max_iter, "ftol": 1e-18, "gtol": 1e-14},
        )
        if res.fun > 1e-14:
            continue
        gate = _gate(kern, pen, res.x, target, tol, margin)
        if gate is not None:
            w, r, residuals = gate
            return SearchResult(
                found=True,
                target=target,
                omega=w,
                rho=r,
                residuals=residuals,
                seed=seed,
                restarts_used=restart + 1,
            )
    return SearchResult(found=False, target=target, seed=seed, restarts_used=restarts)


def _gate(kern, pen, x, target, tol, margin):
    """Float acceptance gate: residuals, lambda sign and metric margin."""
    w, z = pen.split(x)
    rho_raw = kern.z3 @ z
    n = np.linalg.norm(rho_raw)
    if n < 1e-9:
        return None
    r = rho_raw / n
    resid_drho = float(np.linalg.norm(kern.d3 @ r))
    q = np.einsum("ijm,i,j->m", kern.w22, w, w)
    resid_dw2 = float(np.linalg.norm(kern.d4 @ q))
    resid_wr = float(np.linalg.norm(np.einsum("ijm,i,j->m", kern.w23, w, r)))
    g, lam = kern.metric_raw(w, r)
    s = 0.5 * (g + g.T)
    evals = np.linalg.eigvalsh(s)
    residuals = {
        "resid_drho": resid_drho,
        "resid_domega2": resid_dw2,
        "resid_omega_rho": resid_wr,
        "lambda_float": lam,
    }
    if max(resid_drho, resid_dw2, resid_wr) > tol:
        return None
    if target in ("su3", "su12") and lam >= 0:
        return None
    if target == "sl3r" and lam <= 0:
        return None
    if target == "su3":
        tr = float(np.trace(s))
        if abs(tr) < 1e-12:
            return None
        min_eig = float(np.min(evals / tr))
        residuals["min_eig_normalized"] = min_eig
        if min_eig <= margin:
            return None
    else:
        scale = max(float(np.linalg.norm(s)), 1e-12)
        pos = int(np.sum(evals > 1e-6 * scale))
        neg = int(np.sum(evals < -1e-6 * scale))
        residuals["signature"] = f"({pos},{neg})"
        want = {(3, 3)} if target == "sl3r" else {(2, 4), (4, 2)}
        if (pos, neg) not in want:
            return None
    return w, r, residuals


def rationalize(
    L: LieAlgebra,
    result: SearchResult,
    max_den: int = 64,
    target: str | None = None,
) -> tuple[KForm, KForm] | None:
    """Continued-fraction rounding of a found pair plus exact re-verification.

    Denominators are tried in an increasing ladder up to ``max_den``; the
    first snapped pair that passes the exact verifier (half-flat with the
    target kind) is returned, updating ``result.rationalized``.
    """
    if not result.found or result.omega is None:
        return None
    target = target or result.target
    kinds = TARGET_KINDS[target]
    b2, b3 = basis_masks(2), basis_masks(3)
    ladder = sorted({d for d in (1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64) if d <= max_den})
    scale = float(np.max(np.abs(result.rho)))
    for den in ladder:
        omega = KForm(
            2,
            {
                m: Fraction(float(c)).limit_denominator(den)
                for m, c in zip(b2, result.omega)
            },
        )
        rho = KForm(
            3,
            {
                m: Fraction(float(c) / scale).limit_denominator(den)
                for m, c in zip(b3, result.rho)
            },
        )
        if omega.is_zero() or rho.is_zero():
            continue
        rep = verify(L, omega, rho)
        if rep.half_flat and rep.structure.kind in kinds:
            result.rationalized = (omega, rho)
            result.exact_report = rep
            return omega, rho
    return None


def float_reverify(L: LieAlgebra, result: SearchResult) -> dict:
    """Recompute the residual block for a found pair (fresh kernels)."""
    kern = FloatKernels(L)
    w, r = result.omega, result.rho
    out = {
        "resid_drho": float(np.linalg.norm(kern.d3 @ r)),
        "resid_domega2": float(
            np.linalg.norm(kern.d4 @ np.einsum("ijm,i,j->m", kern.w22, w, w))
        ),
        "resid_omega_rho": float(
            np.linalg.norm(np.einsum("ijm,i,j->m", kern.w23, w, r))
        ),
        "lambda_float": kern.lam_of(r),
    }
    return out
