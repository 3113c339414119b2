//! Exact evaluation of the extension conditions over an HNN group.
//!
//! Each family corresponds to one shape of ambiguity of the extension
//! system. An instance rewrites both sides of its ambiguity to the form
//! `z·x` with `z` a word over `H₁ ∪ {t, T}` and `x ∈ A`; the `z` parts agree
//! by construction, so the instance holds exactly when the two `A`-parts
//! agree. Instances are generated only where the ambiguity exists, so a
//! family involving `ht` skips `h` that represents its own `C`-coset.
//!
//! With `F(x, y) = (x, y)`, `G(x) = (x, t)`, `K(x) = (x, T)` (all `1` on an
//! identity argument), `k = h'_C` and `n = [hk]`, the intersection at
//! `h h' t` gives
//! `G([hh'])·F(h,h')^t = F(φ(c_n), φ(c_{h'}))·G(n)^{φ(c_{h'})}·F(h,k)^{tφ(c_{h'})}·G(h')`,
//! which reduces to the familiar `(hh',t)(h,h')^t = (h,t)^{φ(c_{h'})}(h',t)`
//! when `h' ∈ C` and `F` vanishes on `D`. The ambiguity `h t T` gives
//! `F(h_C, c_h)·K(φ(c_h))·G(h)^T = 1`. The remaining families are the
//! analogues for `T`, the cocycle identity on `H`, and the compatibility of
//! the action with each relation.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Gen, HnnExtensionSpec, HnnLetter};
use crate::group::Elem;

/// The nine shapes of ambiguity, named by their ambiguity word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HFamily {
    /// `h h' h''`: `(h,[h'h''])(h',h'') = ([hh'],h'')(h,h')^{h''}`.
    Cocycle,
    /// `h h' t`.
    PairT,
    /// `h h' T`.
    PairTInv,
    /// `h t T`.
    CancelTTInv,
    /// `h T t`.
    CancelTInvT,
    /// `a h h'`: `a^{[hh']}(h,h') = (h,h')a^{hh'}`.
    ActionHH,
    /// `a h t`: `a^{h_C t φ(c_h)}(h,t) = (h,t)a^{ht}`.
    ActionHT,
    /// `a h T`.
    ActionHTInv,
    /// `a t^ε t^{-ε}`: `a^{t^ε t^{-ε}} = a`.
    ActionStable,
}

impl HFamily {
    pub const ALL: [HFamily; 9] = [
        HFamily::Cocycle,
        HFamily::PairT,
        HFamily::PairTInv,
        HFamily::CancelTTInv,
        HFamily::CancelTInvT,
        HFamily::ActionHH,
        HFamily::ActionHT,
        HFamily::ActionHTInv,
        HFamily::ActionStable,
    ];

    /// The family of an ambiguity word of the extension system, read off
    /// from the roles of its letters.
    pub fn of_roles(roles: &[HnnLetter]) -> Option<HFamily> {
        use HnnLetter::{A, H, T, TInv};
        Some(match roles {
            [H(_), H(_), H(_)] => HFamily::Cocycle,
            [H(_), H(_), T] => HFamily::PairT,
            [H(_), H(_), TInv] => HFamily::PairTInv,
            [H(_), T, TInv] => HFamily::CancelTTInv,
            [H(_), TInv, T] => HFamily::CancelTInvT,
            [A(_), H(_), H(_)] => HFamily::ActionHH,
            [A(_), H(_), T] => HFamily::ActionHT,
            [A(_), H(_), TInv] => HFamily::ActionHTInv,
            [A(_), T, TInv] | [A(_), TInv, T] => HFamily::ActionStable,
            _ => return None,
        })
    }

    /// The ambiguity word in letters `a`, `h`, `h'`, `h''`, `t`, `T`.
    pub fn ambiguity(self) -> &'static str {
        match self {
            HFamily::Cocycle => "h h' h''",
            HFamily::PairT => "h h' t",
            HFamily::PairTInv => "h h' T",
            HFamily::CancelTTInv => "h t T",
            HFamily::CancelTInvT => "h T t",
            HFamily::ActionHH => "a h h'",
            HFamily::ActionHT => "a h t",
            HFamily::ActionHTInv => "a h T",
            HFamily::ActionStable => "a t^e t^-e",
        }
    }
}

impl fmt::Display for HFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ambiguity())
    }
}

/// A failing instance: the tuple it was evaluated at and both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HFailure {
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HFamilyReport {
    pub family: HFamily,
    pub instances: usize,
    pub failures: Vec<HFailure>,
}

impl HFamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HConditionReport {
    pub families: Vec<HFamilyReport>,
}

impl HConditionReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(HFamilyReport::passed)
    }

    pub fn family(&self, f: HFamily) -> &HFamilyReport {
        self.families.iter().find(|r| r.family == f).expect("every family is reported")
    }

    pub fn failing_families(&self) -> Vec<HFamily> {
        self.families.iter().filter(|r| !r.passed()).map(|r| r.family).collect()
    }
}

/// One instance: a label and the two `A`-values.
type Instance = (String, Elem, Elem);

/// Evaluates every family over all instances where its ambiguity exists.
pub fn check_h_conditions(espec: &HnnExtensionSpec) -> HConditionReport {
    let families = HFamily::ALL
        .par_iter()
        .map(|&family| {
            let instances = instances(espec, family);
            let a = espec.a();
            HFamilyReport {
                family,
                instances: instances.len(),
                failures: instances
                    .into_iter()
                    .filter(|(_, l, r)| l != r)
                    .map(|(instance, l, r)| HFailure {
                        instance,
                        lhs: a.name(l).to_string(),
                        rhs: a.name(r).to_string(),
                    })
                    .collect(),
            }
        })
        .collect();
    HConditionReport { families }
}

fn instances(espec: &HnnExtensionSpec, family: HFamily) -> Vec<Instance> {
    let base = espec.base();
    let h = base.h();
    let a = espec.a();
    let h1 = base.omega();
    let m = |x: Elem, y: Elem| a.mul(x, y);
    let name = |x: Elem| h.name(x).to_string();
    let mut out = Vec::new();
    match family {
        HFamily::Cocycle => {
            for &x in h1 {
                for &y in h1 {
                    for &z in h1 {
                        let lhs = m(espec.f(x, h.mul(y, z)), espec.f(y, z));
                        let rhs = m(espec.f(h.mul(x, y), z), espec.act(espec.f(x, y), &[Gen::H(z)]));
                        out.push((format!("h={}, h'={}, h''={}", name(x), name(y), name(z)), lhs, rhs));
                    }
                }
            }
        }
        HFamily::PairT | HFamily::PairTInv => {
            let inverse = family == HFamily::PairTInv;
            let stable = if inverse { Gen::TInv } else { Gen::T };
            for &x in h1 {
                for &y in h1 {
                    let exists = if inverse { base.has_t_inv_rule(y) } else { base.has_t_rule(y) };
                    if !exists {
                        continue;
                    }
                    let split = |g: Elem| if inverse { base.split_d(g) } else { base.split_c(g) };
                    let image = |g: Elem| {
                        if inverse {
                            base.phi().apply_inverse(g)
                        } else {
                            base.phi().apply(g)
                        }
                    };
                    let (k, cy) = split(y);
                    let n = h.mul(x, k);
                    let (_, cn) = split(n);
                    let (pn, py) = (image(cn), image(cy));
                    let lhs = m(espec.g(h.mul(x, y), inverse), espec.act(espec.f(x, y), &[stable]));
                    let rhs = [
                        espec.f(pn, py),
                        espec.act(espec.g(n, inverse), &[Gen::H(py)]),
                        espec.act(espec.f(x, k), &[stable, Gen::H(py)]),
                        espec.g(y, inverse),
                    ]
                    .into_iter()
                    .fold(a.identity(), m);
                    out.push((format!("h={}, h'={}", name(x), name(y)), lhs, rhs));
                }
            }
        }
        HFamily::CancelTTInv | HFamily::CancelTInvT => {
            let inverse = family == HFamily::CancelTInvT;
            for &x in h1 {
                let (rep, sub, image, back) = if inverse {
                    if !base.has_t_inv_rule(x) {
                        continue;
                    }
                    let (rep, d) = base.split_d(x);
                    (rep, d, base.phi().apply_inverse(d), Gen::T)
                } else {
                    if !base.has_t_rule(x) {
                        continue;
                    }
                    let (rep, c) = base.split_c(x);
                    (rep, c, base.phi().apply(c), Gen::TInv)
                };
                let lhs = [
                    espec.f(rep, sub),
                    espec.g(image, !inverse),
                    espec.act(espec.g(x, inverse), &[back]),
                ]
                .into_iter()
                .fold(a.identity(), m);
                out.push((format!("h={}", name(x)), lhs, a.identity()));
            }
        }
        HFamily::ActionHH => {
            for v in a.non_identity() {
                for &x in h1 {
                    for &y in h1 {
                        let f = espec.f(x, y);
                        let lhs = m(espec.act(v, &[Gen::H(h.mul(x, y))]), f);
                        let rhs = m(f, espec.act(v, &[Gen::H(x), Gen::H(y)]));
                        out.push((format!("a={}, h={}, h'={}", a.name(v), name(x), name(y)), lhs, rhs));
                    }
                }
            }
        }
        HFamily::ActionHT | HFamily::ActionHTInv => {
            let inverse = family == HFamily::ActionHTInv;
            for v in a.non_identity() {
                for &x in h1 {
                    let (rep, image, stable) = if inverse {
                        if !base.has_t_inv_rule(x) {
                            continue;
                        }
                        let (rep, d) = base.split_d(x);
                        (rep, base.phi().apply_inverse(d), Gen::TInv)
                    } else {
                        if !base.has_t_rule(x) {
                            continue;
                        }
                        let (rep, c) = base.split_c(x);
                        (rep, base.phi().apply(c), Gen::T)
                    };
                    let g = espec.g(x, inverse);
                    let lhs = m(espec.act(v, &[Gen::H(rep), stable, Gen::H(image)]), g);
                    let rhs = m(g, espec.act(v, &[Gen::H(x), stable]));
                    out.push((format!("a={}, h={}", a.name(v), name(x)), lhs, rhs));
                }
            }
        }
        HFamily::ActionStable => {
            for v in a.non_identity() {
                for (e, gens) in [("1", [Gen::T, Gen::TInv]), ("-1", [Gen::TInv, Gen::T])] {
                    out.push((format!("a={}, e={e}", a.name(v)), espec.act(v, &gens), v));
                }
            }
        }
    }
    out
}
