//! The reflection, φ, λ, η and ξ families and the even-part reduction.

use crate::clifford::tensor::{SignFlip, TensorAlgebra, TensorElement};
use crate::clifford::{t_flip_mask, v_k_mask, v_k_square_sign, MultiVector, Signature};
use crate::error::{Error, Result};

use super::AlgebraMorphism;

fn delta_mod4(kp: u32, km: u32) -> i64 {
    (kp as i64 - km as i64).rem_euclid(4)
}

fn single(x: MultiVector) -> TensorElement {
    TensorElement::from_multivector(&x)
}

/// The reflection `τ_v` as an automorphism of C(p,q).
pub fn tau(sig: Signature, v: &MultiVector) -> Result<AlgebraMorphism> {
    let images = (0..sig.n())
        .map(|k| MultiVector::generator(sig, k).reflect(v))
        .collect::<Result<Vec<_>>>()?;
    AlgebraMorphism::from_multivectors(format!("τ[{v}]"), sig, images)
}

/// The isomorphism `φ_K` out of C(M), M = K + L. Its target depends on `ΔK mod 4`:
/// `C(K)⊗C(L)`, `C(k₊+l₋, k₋+l₊)`, `C(K)⊗C(L^∨)` or `C(M)`.
pub fn phi_k(sig: Signature, k_plus: u32, k_minus: u32) -> Result<AlgebraMorphism> {
    if k_plus > sig.p || k_minus > sig.q {
        return Err(Error::Domain(format!("φ_({k_plus},{k_minus}) needs K ≤ M = {sig}")));
    }
    let (kp, km) = (k_plus, k_minus);
    let (lp, lm) = (sig.p - kp, sig.q - km);
    let ks = Signature::of(kp, km);
    let name = format!("φ_({kp},{km})");
    let vk = v_k_mask(&ks, kp, km)?;
    let mut images = Vec::with_capacity(sig.n() as usize);
    match delta_mod4(kp, km) {
        d @ (0 | 2) => {
            let ls = if d == 0 { Signature::of(lp, lm) } else { Signature::of(lm, lp) };
            let alg = TensorAlgebra::pair(ks, ls);
            for i in 1..=sig.p {
                images.push(if i <= kp {
                    TensorElement::unit(alg.clone(), vec![ks.plus_bit(i), 0])
                } else if d == 0 {
                    TensorElement::unit(alg.clone(), vec![vk, ls.plus_bit(i - kp)])
                } else {
                    TensorElement::unit(alg.clone(), vec![vk, ls.minus_bit(i - kp)])
                });
            }
            for j in 1..=sig.q {
                images.push(if j <= km {
                    TensorElement::unit(alg.clone(), vec![ks.minus_bit(j), 0])
                } else if d == 0 {
                    TensorElement::unit(alg.clone(), vec![vk, ls.minus_bit(j - km)])
                } else {
                    TensorElement::unit(alg.clone(), vec![vk, ls.plus_bit(j - km)])
                });
            }
            AlgebraMorphism::new(name, sig, alg, images)
        }
        1 => {
            let mut mvs = Vec::with_capacity(sig.n() as usize);
            let t = Signature::of(kp + lm, km + lp);
            let v = MultiVector::unit_blade(t, v_k_mask(&t, kp, km)?);
            for i in 1..=sig.p {
                mvs.push(if i <= kp { MultiVector::plus(t, i) } else { &v * &MultiVector::minus(t, km + i - kp) });
            }
            for j in 1..=sig.q {
                mvs.push(if j <= km { MultiVector::minus(t, j) } else { &v * &MultiVector::plus(t, kp + j - km) });
            }
            AlgebraMorphism::from_multivectors(name, sig, mvs)
        }
        _ => {
            let mut mvs = Vec::with_capacity(sig.n() as usize);
            let v = MultiVector::unit_blade(sig, v_k_mask(&sig, kp, km)?);
            for i in 1..=sig.p {
                let g = MultiVector::plus(sig, i);
                mvs.push(if i <= kp { g } else { &v * &g });
            }
            for j in 1..=sig.q {
                let g = MultiVector::minus(sig, j);
                mvs.push(if j <= km { g } else { &v * &g });
            }
            AlgebraMorphism::from_multivectors(name, sig, mvs)
        }
    }
}

/// The automorphism `λ_K` of C(M) for `1 ≤ k± ≤ m±`. It moves `V_K` towards
/// a single generator; `λ_K² = id` when `ΔK ≡ 0,1 mod 4` and
/// `λ_K² = τ_{k₊}⁺τ_{k₋}⁻` otherwise.
pub fn lambda_k(sig: Signature, k_plus: u32, k_minus: u32) -> Result<AlgebraMorphism> {
    let (kp, km) = (k_plus, k_minus);
    if kp < 1 || km < 1 || kp > sig.p || km > sig.q {
        return Err(Error::Domain(format!("λ_({kp},{km}) needs 1 ≤ k± ≤ m± in C{sig}")));
    }
    let a = MultiVector::plus(sig, kp);
    let b = MultiVector::minus(sig, km);
    let ab = &a * &b;
    let v = MultiVector::unit_blade(sig, v_k_mask(&sig, kp - 1, km - 1)?);
    let d = delta_mod4(kp, km);
    let even = d % 2 == 0;
    // `pivot` is the image of v_{k₊}⁺ / v_{k₋}⁻; `own` is whether it keeps its own type.
    let own = d == 0 || d == 3;
    let mut images = Vec::with_capacity(sig.n() as usize);
    for i in 1..=sig.p {
        let g = MultiVector::plus(sig, i);
        images.push(if i == kp {
            if own {
                &v * &a
            } else {
                &v * &b
            }
        } else if (i < kp) == even {
            &ab * &g
        } else {
            g
        });
    }
    for j in 1..=sig.q {
        let g = MultiVector::minus(sig, j);
        images.push(if j == km {
            if own {
                &v * &b
            } else {
                &v * &a
            }
        } else if (j < km) == even {
            &ab * &g
        } else {
            g
        });
    }
    AlgebraMorphism::from_multivectors(format!("λ_({kp},{km})"), sig, images)
}

/// The auxiliary index `K'` with `1 ≤ k'± ≤ m±` used by η and ξ.
fn bumped_index(sig: &Signature, kp: u32, km: u32) -> Result<(u32, u32)> {
    let k = if kp < sig.p && km > 0 { (kp + 1, km) } else { (kp, km + 1) };
    if k.0 < 1 || k.1 < 1 || k.0 > sig.p || k.1 > sig.q {
        return Err(Error::Domain(format!("no admissible λ index next to ({kp},{km}) in C{sig}")));
    }
    Ok(k)
}

/// Reflection swapping two generators of equal square, or the identity.
fn swap(sig: Signature, x: &MultiVector, y: &MultiVector) -> Result<Option<AlgebraMorphism>> {
    if x == y {
        return Ok(None);
    }
    let v = x - y;
    Ok(Some(tau(sig, &v)?))
}

/// `η_K: C(M) → C(1,1)⊗C(p-1,q-1)` with `η_K(V_K) = v₁⁺⊗1` when
/// `ΔK ≡ 0,1 mod 4` and `v₁⁻⊗1` otherwise.
pub fn eta_k(sig: Signature, k_plus: u32, k_minus: u32) -> Result<AlgebraMorphism> {
    let (kp, km) = (k_plus, k_minus);
    if sig.p < 1 || sig.q < 1 {
        return Err(Error::Domain(format!("η needs p,q ≥ 1, got C{sig}")));
    }
    if (kp, km) == (0, 0) || (kp, km) == (sig.p, sig.q) || kp > sig.p || km > sig.q {
        return Err(Error::Domain(format!("η_({kp},{km}) needs 0 ≠ K ≠ M in C{sig}")));
    }
    let (bp, bm) = bumped_index(&sig, kp, km)?;
    let lam = lambda_k(sig, bp, bm)?;
    let vk = MultiVector::unit_blade(sig, v_k_mask(&sig, kp, km)?);
    let w = lam.apply(&vk)?.to_multivector()?;
    if !w.is_vector() || w.as_single_term().is_none() {
        return Err(Error::Domain(format!("λ_({bp},{bm})(V_K) = {w} is not a generator")));
    }
    let t = if v_k_square_sign(kp, km) > 0 { MultiVector::plus(sig, 1) } else { MultiVector::minus(sig, 1) };
    let mut map = lam;
    if let Some(s) = swap(sig, &w, &t)? {
        map = map.then(0, &s)?;
    }
    map = map.then(0, &phi_k(sig, 1, 1)?)?;
    map.name = format!("η_({kp},{km})");
    let got = map.apply(&vk)?;
    let c11 = Signature::of(1, 1);
    let t_bit = if v_k_square_sign(kp, km) > 0 { c11.plus_bit(1) } else { c11.minus_bit(1) };
    let want = TensorElement::unit(map.target().clone(), vec![t_bit, 0]);
    if got != want {
        return Err(Error::Domain(format!("η_({kp},{km})(V_K) = {got}, expected {want}")));
    }
    Ok(map)
}

/// `ξ_L` together with the flip it transfers `T_L` to.
#[derive(Clone, Debug)]
pub struct XiMorphism {
    pub map: AlgebraMorphism,
    /// `id⊗τ₁^±` on the two-factor target.
    pub transfer: SignFlip,
}

impl XiMorphism {
    /// Whether the transfer of `T_L` is `id⊗τ₁⁺` (as opposed to `id⊗τ₁⁻`).
    pub fn transfers_to_plus(&self) -> bool {
        self.map.target().factors[1] == Signature::of(1, 0)
    }
}

/// `ξ_L: C(M) → C(X)⊗C(Y)` with `dim C(Y) = 2`, transferring `T_L` to
/// `id⊗τ₁^±`. Needs `K = M-L ≠ 0`, `L ≠ 0`, `p, q ≥ 1`, and `ΔM`, `ΔL` odd;
/// the construction goes through `λ_{K'}`, which has no index to use when `q = 0`.
pub fn xi_l(sig: Signature, l_plus: u32, l_minus: u32) -> Result<XiMorphism> {
    let (lp, lm) = (l_plus, l_minus);
    if lp > sig.p || lm > sig.q {
        return Err(Error::Domain(format!("ξ_({lp},{lm}) needs L ≤ M = {sig}")));
    }
    let (kp, km) = (sig.p - lp, sig.q - lm);
    if (kp, km) == (0, 0) || (lp, lm) == (0, 0) || sig.p < 1 || sig.q < 1 {
        return Err(Error::Domain(format!("ξ_({lp},{lm}) needs 0 ≠ L ≠ M and p, q ≥ 1")));
    }
    if sig.delta().rem_euclid(2) != 1 || (lp as i64 - lm as i64).rem_euclid(2) != 1 {
        return Err(Error::Domain(format!("ξ_({lp},{lm}) needs ΔM and ΔL odd")));
    }
    let (bp, bm) = bumped_index(&sig, kp, km)?;
    let lam = lambda_k(sig, bp, bm)?;
    let t_l = t_flip_mask(&sig, lp, lm)?;
    let d = lam
        .transferred_flip(t_l)?
        .ok_or_else(|| Error::Domain("λ does not transfer T_L to a sign flip".into()))?;
    if d.flips[0].count_ones() != 1 {
        return Err(Error::Domain(format!("λ transfers T_L to a flip of {} generators", d.flips[0].count_ones())));
    }
    let g = d.flips[0].trailing_zeros();
    let mut map = lam;
    if g >= sig.p {
        let j = g - sig.p + 1;
        if let Some(s) = swap(sig, &MultiVector::minus(sig, j), &MultiVector::minus(sig, sig.q))? {
            map = map.then(0, &s)?;
        }
        map = map.then(0, &phi_k(sig, 1, 0)?)?;
        let s2 = Signature::of(sig.q + 1, sig.p - 1);
        map = map.then(0, &phi_k(s2, sig.q, sig.p - 1)?)?;
    } else {
        let i = g + 1;
        if let Some(s) = swap(sig, &MultiVector::plus(sig, i), &MultiVector::plus(sig, sig.p))? {
            map = map.then(0, &s)?;
        }
        map = map.then(0, &phi_k(sig, sig.p - 1, sig.q)?)?;
    }
    map.name = format!("ξ_({lp},{lm})");
    let transfer = map
        .transferred_flip(t_l)?
        .ok_or_else(|| Error::Domain("ξ does not transfer T_L to a sign flip".into()))?;
    if transfer.flips != vec![0, 1] || map.target().factors[1].n() != 1 {
        return Err(Error::Domain(format!("ξ transfers T_L to {:?}, not id⊗τ₁", transfer.flips)));
    }
    Ok(XiMorphism { map, transfer })
}

/// The embedding `ε: C(p,q-1) → C(p,q)` onto the even part:
/// `v_i⁺ ↦ v₁⁻v_i⁺`, `v_j⁻ ↦ v₁⁻v_{j+1}⁻`.
pub fn even_reduction(sig: Signature) -> Result<AlgebraMorphism> {
    if sig.q < 1 {
        return Err(Error::Domain(format!("C_even{sig} ≅ C(p,q-1) needs q ≥ 1")));
    }
    let src = Signature::of(sig.p, sig.q - 1);
    let e = MultiVector::minus(sig, 1);
    let mut images = Vec::with_capacity(src.n() as usize);
    for i in 1..=src.p {
        images.push(&e * &MultiVector::plus(sig, i));
    }
    for j in 1..=src.q {
        images.push(&e * &MultiVector::minus(sig, j + 1));
    }
    let images = images.into_iter().map(single).collect();
    AlgebraMorphism::new("ε", src, TensorAlgebra::single(sig), images)
}

/// `C_even(p,q) ≅ C_even(q,p)`, realised through `C(p,q-1)`.
#[derive(Clone, Debug)]
pub struct EvenSwap {
    /// `ε: C(p,q-1) → C_even(p,q)`.
    pub reduction: AlgebraMorphism,
    /// `C(p,q-1) → C_even(q,p)`: a shift into `C(p+1,q-1)^{τ₁⁺}` followed by `φ_(1,0)`.
    pub swap: AlgebraMorphism,
}

impl EvenSwap {
    /// Image in C(q,p) of an even element of C(p,q).
    pub fn apply(&self, x: &MultiVector) -> Result<MultiVector> {
        if !x.is_even() {
            return Err(Error::Domain("even swap acts on C_even".into()));
        }
        let pre = self.reduction.preimage(&TensorElement::from_multivector(x))?;
        self.swap.apply(&pre)?.to_multivector()
    }

    /// Checks that `T_{p,0}` on C_even(p,q) corresponds to `T_{0,p}` on C_even(q,p).
    pub fn transfers_t(&self) -> Result<bool> {
        let src = self.reduction.source();
        let full = self.reduction.target().factors[0];
        let dual = self.swap.target().factors[0];
        let flip_src = src.plus_mask();
        let on_pq = SignFlip { flips: vec![t_flip_mask(&full, full.p, 0)?] };
        let on_qp = SignFlip { flips: vec![t_flip_mask(&dual, 0, dual.q)?] };
        Ok(self.reduction.transfers(flip_src, &on_pq) && self.swap.transfers(flip_src, &on_qp))
    }
}

pub fn even_swap(sig: Signature) -> Result<EvenSwap> {
    let reduction = even_reduction(sig)?;
    let src = reduction.source();
    let up = Signature::of(src.p + 1, src.q);
    let mut images = Vec::with_capacity(src.n() as usize);
    for i in 1..=src.p {
        images.push(single(MultiVector::plus(up, i + 1)));
    }
    for j in 1..=src.q {
        images.push(single(MultiVector::minus(up, j)));
    }
    let shift = AlgebraMorphism::new("shift", src, TensorAlgebra::single(up), images)?;
    let mut swap = shift.then(0, &phi_k(up, 1, 0)?)?;
    swap.name = "even swap".into();
    Ok(EvenSwap { reduction, swap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::tensor::TensorAlgebra;
    use crate::morphisms::blade_sample;

    fn s(p: u32, q: u32) -> Signature {
        Signature::of(p, q)
    }

    #[test]
    fn phi_displays() {
        let f = phi_k(s(2, 2), 1, 1).unwrap();
        let alg = TensorAlgebra::pair(s(1, 1), s(1, 1));
        assert_eq!(f.image(1), &TensorElement::unit(alg, vec![0b11, 0b01]));
        let g = phi_k(s(1, 2), 0, 1).unwrap();
        assert_eq!(g.image(0).to_string(), "-v+1v-1");
        let h = phi_k(s(3, 2), 1, 0).unwrap();
        assert_eq!(h.target(), &TensorAlgebra::single(s(3, 2)));
        assert_eq!(h.image(1).to_string(), "v+1v-1");
        assert_eq!(h.image(3).to_string(), "v+1v+2");
    }

    #[test]
    fn phi_all_small_signatures_bijective_and_star_compatible() {
        for p in 0..=4 {
            for q in 0..=4 {
                for kp in 0..=p {
                    for km in 0..=q {
                        let f = phi_k(s(p, q), kp, km).unwrap();
                        assert!(f.is_bijective().unwrap(), "{f}");
                        assert!(f.star_compatible_on(0..s(p, q).dim() as u32), "{f}");
                        for k in 0..p + q {
                            assert!(f.transferred_flip(1 << k).unwrap().is_some());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn phi10_transfers_tau1_plus_to_t() {
        for p in 1..=4 {
            for q in 0..=3 {
                let f = phi_k(s(p, q), 1, 0).unwrap();
                let t = f.target().factors[0];
                let want = SignFlip { flips: vec![t_flip_mask(&t, t.p, t.q).unwrap()] };
                assert_eq!(f.transferred_flip(1).unwrap(), Some(want));
            }
        }
    }

    #[test]
    fn lambda_squares() {
        for p in 1..=4 {
            for q in 1..=4 {
                for kp in 1..=p {
                    for km in 1..=q {
                        let sig = s(p, q);
                        let l = lambda_k(sig, kp, km).unwrap();
                        let sq = l.then(0, &l).unwrap();
                        let flip = if delta_mod4(kp, km) < 2 { 0 } else { sig.plus_bit(kp) | sig.minus_bit(km) };
                        let want = SignFlip { flips: vec![flip] };
                        assert!(AlgebraMorphism::identity(sig).transfers(flip, &want));
                        for k in 0..sig.n() {
                            let x = sq.image(k);
                            let g = TensorElement::unit(TensorAlgebra::single(sig), vec![1 << k]);
                            let sign = if flip >> k & 1 == 1 { -1 } else { 1 };
                            assert_eq!(x, &g.scale(&crate::linalg::int(sign)), "λ_({kp},{km}) on C{sig}");
                        }
                        assert!(l.is_bijective().unwrap());
                        assert!(l.star_compatible_on(blade_sample(&sig, 64, 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn eta_sends_vk_to_generator() {
        let e = eta_k(s(2, 1), 2, 0).unwrap();
        let vk = MultiVector::unit_blade(s(2, 1), 0b11);
        assert_eq!(e.apply(&vk).unwrap().to_string(), "v-1⊗1");
        for p in 1..=4 {
            for q in 1..=4 {
                for kp in 0..=p {
                    for km in 0..=q {
                        if (kp, km) == (0, 0) || (kp, km) == (p, q) {
                            continue;
                        }
                        let e = eta_k(s(p, q), kp, km).unwrap();
                        assert!(e.is_bijective().unwrap());
                        assert!(e.star_compatible_on(blade_sample(&s(p, q), 64, 2)));
                    }
                }
            }
        }
    }

    #[test]
    fn xi_transfers_t_l() {
        // M = (3,2), L = (3,0): ΔM ≡ 1, so the transfer is id⊗τ₁⁺.
        let x = xi_l(s(3, 2), 3, 0).unwrap();
        assert!(x.transfers_to_plus());
        assert!(xi_l(s(3, 0), 1, 0).is_err());
        for p in 1..=5 {
            for q in 1..=4 {
                let sig = s(p, q);
                if sig.delta().rem_euclid(2) != 1 {
                    continue;
                }
                for lp in 0..=p {
                    for lm in 0..=q {
                        let odd = (lp as i64 - lm as i64).rem_euclid(2) == 1;
                        if !odd || (lp, lm) == (p, q) {
                            continue;
                        }
                        let x = xi_l(sig, lp, lm).unwrap();
                        assert_eq!(x.transfers_to_plus(), sig.delta().rem_euclid(4) == 1, "C{sig} L=({lp},{lm})");
                        assert!(x.map.is_bijective().unwrap());
                        assert!(x.map.star_compatible_on(blade_sample(&sig, 64, 3)));
                    }
                }
            }
        }
    }

    #[test]
    fn even_reduction_and_swap() {
        let e = even_reduction(s(1, 1)).unwrap();
        assert_eq!(e.image(0).to_string(), "-v+1v-1");
        for p in 0..=4 {
            for q in 1..=4 {
                let w = even_swap(s(p, q)).unwrap();
                assert!(w.reduction.is_injective().unwrap());
                assert!(w.swap.is_injective().unwrap());
                assert!(w.transfers_t().unwrap(), "C{}", s(p, q));
                for b in 0..w.reduction.source().dim() as u32 {
                    assert!(w.swap.apply_blade(b).to_multivector().unwrap().is_even());
                }
            }
        }
    }

    #[test]
    fn tau_rejects_null_vector() {
        let sig = s(1, 1);
        let v = &MultiVector::plus(sig, 1) - &MultiVector::minus(sig, 1);
        assert!(tau(sig, &v).is_err());
    }
}
