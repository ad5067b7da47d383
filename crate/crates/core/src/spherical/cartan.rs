//! Volumes of Cartan cells `K a_λ K` in `Sp_{2m}(Q_p)`, with `K = Sp_{2m}(Z_p)`
//! of volume `∏_{i=1}^{m} (1 - p^{-2i})`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::root_datum::{Cocharacter, RootDatumC};
use crate::error::{domain, Result};
use crate::exact::rational_pow;

/// `vol(Sp_{2m}(Z_p)) = ∏_{i=1}^{m} (1 - p^{-2i})`.
pub fn volume_of_k(m: usize, p: u64) -> BigRational {
    (1..=m as i64).fold(BigRational::one(), |acc, i| acc * (BigRational::one() - rational_pow(p, -2 * i)))
}

/// `vol(K a_λ K) = p^{⟨2ρ,λ⟩} W(p^{-1}) / W_λ(p^{-1}) · vol(K)`.
pub fn cell_volume(datum: &RootDatumC, lambda: &Cocharacter, p: u64) -> Result<BigRational> {
    if lambda.rank() != datum.rank() {
        return domain(format!("cocharacter rank {} ≠ group rank {}", lambda.rank(), datum.rank()));
    }
    if !lambda.is_dominant() {
        return domain(format!("cell_volume needs a dominant cocharacter, got {:?}", lambda.lambda));
    }
    let mut full = BigRational::zero();
    let mut stab = BigRational::zero();
    for (w, &len) in datum.weyl_group().iter().zip(datum.lengths()) {
        let term = rational_pow(p, -(len as i64));
        if w.act(&lambda.lambda) == lambda.lambda {
            stab += &term;
        }
        full += term;
    }
    let index = rational_pow(p, 2 * datum.rho_pairing(lambda)) * full / stab;
    Ok(index * volume_of_k(datum.rank(), p))
}

/// `F_{-m/2,m}(1) = (Δ_{Sp_{2m}})_p^{-1} = ∏_{i=1}^{m} (1 - p^{-2i})`.
pub fn f_recursion_special_value(m: usize, p: u64) -> Result<BigRational> {
    if m == 0 {
        return domain("f_recursion_special_value needs m ≥ 1");
    }
    Ok(volume_of_k(m, p))
}
