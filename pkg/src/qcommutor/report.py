"""Verification reports and the registry of checked identities."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

# identity id -> anchor string (the identity being checked, in plain notation)
REGISTRY: dict[str, str] = {
    "relations": "K_i E_j K_i^-1 = q_i^a_ij E_j, [E_i, F_j] = delta_ij (K_i - K_i^-1)/(q_i - q_i^-1), q-Serre",
    "weyl_dimension": "dim V_lambda = prod_alpha (lambda + rho, alpha) / (rho, alpha)",
    "t_i_heads": "T_i v = (-1)^n q_i^n F_i^(n) v when E_i v = 0, n = <wt v, alpha_i^vee>",
    "t_i_weights": "wt(T_i v) = s_i wt(v)",
    "conj_t_i": "C_{T_i}(E_i) = -F_i K_i, C_{T_i}(F_i) = -K_i^-1 E_i, C_{T_i}(K_H) = K_{s_i H}, rank-2 rows",
    "conj_t_w0": "C_{T_w0}(E_i) = -F_th(i) K_th(i), C_{T_w0}(F_i) = -K_th(i)^-1 E_th(i), C_{T_w0}(K_i) = K_th(i)^-1",
    "braid_relations": "T_i T_j T_i ... = T_j T_i T_j ... (m_ij factors)",
    "jj_highest": "E_{i_(k+1)} T_{i_k} ... T_{i_1} v_lambda = 0",
    "jj_closed_form": "T_{i_k} ... T_{i_1} v_lambda = (-1)^(sum n) q^(sum d n) F^(n_k) ... F^(n_1) v_lambda",
    "lowest_routes": "v_low = T_w0 v_lambda / ((-1)^<2lambda,rho^vee> q^(2lambda,rho)) = F^(n_m)...F^(n_1) v_lambda = F~^n_m ... F~^n_1 v_lambda",
    "lowest_return": "T_w0 v_low = v_lambda",
    "q_central": "Q^(1/2) commutes with E_i, F_i, K_i",
    "cartan_b_inverse": "sum_ij (B^-1)_ij <mu,H_i> <nu,H_j> = (mu, nu)",
    "delta_j": "Delta(J) = (J (x) J) q^((mu, nu))",
    "conj_j": "C_J(E_i) = K_i E_i, C_J(F_i) = F_i K_i^-1",
    "xi_relations": "xi E_i = F_th(i) xi, xi F_i = E_th(i) xi, xi v_lambda = v_low",
    "xi_involution": "xi^2 = Id",
    "xi_prime_square": "xi'^2 = (-1)^<2lambda,rho^vee> Id on V_lambda",
    "conj_xi_double": "C_xi''(E_i) = -F_th(i), C_xi''(F_i) = -E_th(i)",
    "y_equals_xi_double": "Q^(-1/2) J T_w0 = xi''",
    "r_op_r": "R^op R = (Q^-1 (x) Q^-1) Delta(Q)",
    "rbar_routes": "(Y^-1 (x) Y^-1) Delta(Y) = (xi'^-1 (x) xi'^-1) xi'_{V(x)W} = (Q^(1/2) (x) Q^(1/2)) R Delta(Q^(-1/2))",
    "naturality": "sigma X_{V(x)W} = X_{W(x)V} sigma for X = E_i, F_i, K_i",
    "symmetry": "sigma_{W,V} sigma_{V,W} = Id",
    "cactus": "sigma_{U,W(x)V} (Id (x) sigma_{V,W}) = sigma_{V(x)U,W} (sigma_{U,V} (x) Id)",
    "braid_br": "(s (x) 1)(1 (x) s)(s (x) 1) = (1 (x) s)(s (x) 1)(1 (x) s) for s = Flip R",
    "br_not_involutive": "(Flip R)^2 != Id",
    "hk_vs_dr": "sigma^dr = sigma^hk (-1)^<nu - lambda - mu, rho^vee> on the nu component",
    "crystal_axioms": "e_i b = b' iff f_i b' = b, wt(f_i b) = wt b - alpha_i, phi_i - eps_i = <wt, alpha_i^vee>",
    "crystal_tensor": "crystal of (L (x) M, A (x) B) = A (x) B",
    "schutzenberger": "xi(e_i b) = f_th(i) xi(b), wt xi(b) = w0 wt b, xi^2 = Id",
    "crystal_commutor_inverse": "xi(xi(b) (x) xi(a)) = Flip (xi (x) xi)(xi(a (x) b))",
    "crystal_symmetry": "sigma_{B,A} sigma_{A,B} = Id",
    "crystal_cactus": "sigma_{A,C(x)B} (Id (x) sigma_{B,C}) = sigma_{B(x)A,C} (sigma_{A,B} (x) Id)",
    "xi_lattice": "xi_V(L) = L",
    "xi_prime_residue": "xi'_V(b) = i^<lambda, 2 rho^vee> xi_B(b) mod q^-1 L",
    "main2_lattice": "sigma^dr(L (x) M) = M (x) L",
    "main2_residue": "sigma^dr(a (x) b) = (-1)^<lambda + mu - nu, rho^vee> sigma_{A,B}(a (x) b) mod q^-1",
}


@dataclass
class Check:
    identity: str
    instance: str
    passed: bool
    witness: str | None = None

    @property
    def anchor(self) -> str:
        return REGISTRY[self.identity]

    def to_dict(self) -> dict:
        out = {"identity": self.identity, "anchor": self.anchor, "instance": self.instance,
               "status": "pass" if self.passed else "fail"}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, identity: str, instance: str, passed: bool, witness=None) -> Check:
        if identity not in REGISTRY:
            raise KeyError(f"unknown identity {identity!r}")
        chk = Check(identity, instance, bool(passed), None if witness is None else str(witness))
        self.checks.append(chk)
        return chk

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def sorted(self) -> "VerificationReport":
        return VerificationReport(sorted(self.checks, key=lambda c: (c.instance, c.identity)))

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps([c.to_dict() for c in self.checks], indent=indent, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        rows = json.loads(text)
        return cls([Check(r["identity"], r["instance"], r["status"] == "pass", r.get("witness"))
                    for r in rows])

    def summary(self) -> str:
        bad = len(self.failures())
        return f"{len(self.checks) - bad}/{len(self.checks)} checks passed"


def merge(reports: Iterable[VerificationReport]) -> VerificationReport:
    out = VerificationReport()
    for r in reports:
        out.extend(r)
    return out


__all__ = ["REGISTRY", "Check", "VerificationReport", "merge"]
