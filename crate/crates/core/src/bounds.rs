//! Closed-form Ramsey and Gallai-Ramsey values and bounds, with exact
//! checked arithmetic and explicit notes on exceptional inputs.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Exact(u128),
    Interval { lo: u128, hi: u128 },
}

/// A computed value or bracket, tagged with the formula that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub formula_id: String,
    pub notes: Vec<String>,
}

impl BoundResult {
    fn exact(id: &str, v: u128) -> Self {
        debug_assert!(v >= 1);
        BoundResult {
            kind: BoundKind::Exact(v),
            formula_id: id.to_string(),
            notes: Vec::new(),
        }
    }

    fn interval(id: &str, lo: u128, hi: u128) -> Self {
        debug_assert!(lo <= hi);
        BoundResult {
            kind: BoundKind::Interval { lo, hi },
            formula_id: id.to_string(),
            notes: Vec::new(),
        }
    }

    fn with_note(mut self, note: String) -> Self {
        self.notes.push(note);
        self
    }

    /// Exact value, if this result is exact.
    pub fn value(&self) -> Option<u128> {
        match self.kind {
            BoundKind::Exact(v) => Some(v),
            BoundKind::Interval { .. } => None,
        }
    }

    pub fn lo(&self) -> u128 {
        match self.kind {
            BoundKind::Exact(v) => v,
            BoundKind::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> u128 {
        match self.kind {
            BoundKind::Exact(v) => v,
            BoundKind::Interval { hi, .. } => hi,
        }
    }
}

fn mul(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn add(a: u128, b: u128, what: &'static str) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

fn pow(base: u128, exp: usize, what: &'static str) -> Result<u128> {
    let exp: u32 = exp.try_into().map_err(|_| Error::Overflow(what))?;
    base.checked_pow(exp).ok_or(Error::Overflow(what))
}

/// (k - sub) / 2, which every parity branch keeps integral.
fn half_exp(k: usize, sub: usize, what: &'static str) -> Result<usize> {
    let d = k.checked_sub(sub).ok_or(Error::Overflow(what))?;
    if d % 2 != 0 {
        return Err(Error::InternalInconsistency(format!(
            "{what}: exponent ({k} - {sub})/2 is not an integer"
        )));
    }
    Ok(d / 2)
}

fn param_err(msg: String) -> Error {
    Error::ParameterOutOfRange(msg)
}

/// R(C_m, C_n) for 3 <= m <= n, by the classical three-branch formula with
/// the exceptional inputs (3,3) and (4,4) pinned to 6.
pub fn ramsey_cycle(m: usize, n: usize) -> Result<BoundResult> {
    if m < 3 {
        return Err(param_err(format!("cycle order m = {m} is below 3")));
    }
    if m > n {
        return Err(Error::ArgumentOrder { m, n });
    }
    let (mu, nu) = (m as u128, n as u128);
    if (m, n) == (3, 3) {
        return Ok(BoundResult::exact("cycle-ramsey/odd", 6).with_note(
            "excluded case: the odd-branch formula would give 5; the true value is 6".into(),
        ));
    }
    if (m, n) == (4, 4) {
        return Ok(BoundResult::exact("cycle-ramsey/even-even", 6).with_note(
            "excluded case: the even-branch formula would give 5; \
             exhaustive 2-coloring search gives 6"
                .into(),
        ));
    }
    if m % 2 == 1 {
        return Ok(BoundResult::exact("cycle-ramsey/odd", 2 * nu - 1));
    }
    if n % 2 == 0 {
        return Ok(BoundResult::exact(
            "cycle-ramsey/even-even",
            nu - 1 + mu / 2,
        ));
    }
    Ok(BoundResult::exact(
        "cycle-ramsey/even-odd",
        (nu - 1 + mu / 2).max(2 * mu - 1),
    ))
}

/// R(W_n, W_n): exact for n in {5, 6}, a parity-branched interval beyond.
pub fn ramsey_wheel(n: usize) -> Result<BoundResult> {
    if n < 5 {
        return Err(param_err(format!("wheel order {n} is below 5")));
    }
    let nu = n as u128;
    match n {
        5 => Ok(BoundResult::exact("wheel-ramsey/w5", 15)),
        6 => Ok(BoundResult::exact("wheel-ramsey/w6", 17)),
        _ if n % 2 == 0 => {
            // t = (n - 2) / 2 >= 3 here; the 6t+4 form exceeds 3n-3 by one.
            let t = (nu - 2) / 2;
            Ok(
                BoundResult::interval("wheel-ramsey/even", 3 * nu - 3, 8 * nu - 10).with_note(
                    format!("alternative lower bound 6t+4 = {} with t = {t}", 6 * t + 4),
                ),
            )
        }
        _ => {
            let t = (nu - 1) / 2;
            Ok(
                BoundResult::interval("wheel-ramsey/odd", 2 * nu - 2, 6 * nu - 8).with_note(
                    format!("alternative lower bound 4t+1 = {} with t = {t}", 4 * t + 1),
                ),
            )
        }
    }
}

/// gr_k(K3 : W5), exact for every k >= 1.
pub fn gr_w5(k: usize) -> Result<BoundResult> {
    if k == 0 {
        return Err(param_err("palette size 0".into()));
    }
    if k == 1 {
        return Ok(BoundResult::exact("gr-w5/k1", 5));
    }
    if k % 2 == 0 {
        let e = half_exp(k, 2, "gr-w5/even")?;
        let v = add(
            mul(14, pow(5, e, "gr-w5/even")?, "gr-w5/even")?,
            1,
            "gr-w5/even",
        )?;
        Ok(BoundResult::exact("gr-w5/even", v))
    } else {
        let e = half_exp(k, 3, "gr-w5/odd")?;
        let v = add(
            mul(28, pow(5, e, "gr-w5/odd")?, "gr-w5/odd")?,
            1,
            "gr-w5/odd",
        )?;
        Ok(BoundResult::exact("gr-w5/odd", v))
    }
}

/// gr_k(K3 : W_n) bracket for n >= 6, k >= 2: a four-parity-branch lower
/// bound against the 30^k upper bound.
pub fn gr_wheel_bounds(n: usize, k: usize) -> Result<BoundResult> {
    if n < 6 {
        return Err(param_err(format!("wheel order {n} is below 6")));
    }
    if k < 2 {
        return Err(param_err(format!("palette size {k} is below 2")));
    }
    let nu = n as u128;
    let (coeff, sub, branch) = match (n % 2 == 0, k % 2 == 0) {
        (true, true) => (3 * nu - 4, 2, "even-even"),
        (true, false) => (6 * nu - 8, 3, "even-odd"),
        (false, true) => (2 * nu - 3, 2, "odd-even"),
        (false, false) => (4 * nu - 6, 3, "odd-odd"),
    };
    let id = format!("gr-wheel/{branch}");
    let what = "gr-wheel lower";
    let e = half_exp(k, sub, what)?;
    let lo = add(mul(coeff, pow(5, e, what)?, what)?, 1, what)?;
    let what = "gr-wheel upper";
    let hi = add(
        mul(mul(nu - 4, nu - 4, what)?, pow(30, k, what)?, what)?,
        mul(k as u128, nu - 1, what)?,
        what,
    )?;
    let mut out = BoundResult::interval(&id, lo, hi);
    if k < 3 {
        out = out.with_note(
            "the upper-bound formula is stated for k >= 3; its k = 2 value is reported verbatim"
                .into(),
        );
    }
    Ok(out)
}

/// Upper bound on the least order forcing, in a rainbow-triangle-free
/// k-coloring, a wheel W_n in one of the first r colors, a cycle C_{n-1} in
/// one of the next s, or a path P_{n-2} in one of the last t:
/// (n-4)^2 * 30^r * 10^s * 2^t + k(n-1), with k = r + s + t.
pub fn gr_mixed_upper(n: usize, r: usize, s: usize, t: usize) -> Result<BoundResult> {
    if n < 6 {
        return Err(param_err(format!("target order {n} is below 6")));
    }
    let k = r + s + t;
    if k == 0 {
        return Err(param_err("r + s + t must be at least 1".into()));
    }
    let nu = n as u128;
    let what = "gr-mixed upper";
    let mut v = mul(nu - 4, nu - 4, what)?;
    v = mul(v, pow(30, r, what)?, what)?;
    v = mul(v, pow(10, s, what)?, what)?;
    v = mul(v, pow(2, t, what)?, what)?;
    v = add(v, mul(k as u128, nu - 1, what)?, what)?;
    Ok(BoundResult::interval("gr-mixed-upper", 1, v))
}

/// gr_k(K3 : C_{2l+1}) = l * 2^k + 1.
pub fn gr_odd_cycle(l: usize, k: usize) -> Result<BoundResult> {
    if l == 0 {
        return Err(param_err("cycle parameter l = 0".into()));
    }
    if k == 0 {
        return Err(param_err("palette size 0".into()));
    }
    let what = "gr-odd-cycle";
    let v = add(mul(l as u128, pow(2, k, what)?, what)?, 1, what)?;
    let mut out = BoundResult::exact(what, v);
    if l == 2 {
        out = out.with_note(
            "formula stated for l >= 3; l = 2 agrees with exhaustive search at k = 2".into(),
        );
    } else if l == 1 {
        out = out.with_note(
            "formula stated for l >= 3; l = 1 (the triangle) is an extrapolation".into(),
        );
    }
    Ok(out)
}

fn ceil_div(a: u128, b: u128) -> u128 {
    a.div_ceil(b)
}

/// gr_k(K3 : F_n) for the fan F_n (a vertex joined to n disjoint edges):
/// exact three-branch formula for F_2, parity-branched bounds for n >= 3.
pub fn gr_fan(n: usize, k: usize) -> Result<BoundResult> {
    if n < 2 {
        return Err(param_err(format!("fan parameter {n} is below 2")));
    }
    if k < 2 {
        return Err(param_err(format!("palette size {k} is below 2")));
    }
    let nu = n as u128;
    if n == 2 {
        return if k == 2 {
            Ok(BoundResult::exact("gr-fan/f2-k2", 9))
        } else if k % 2 == 0 {
            let what = "gr-fan/f2-even";
            let e = half_exp(k, 4, what)?;
            // (83/2) * 5^e + 1/2 is integral: 83 * 5^e is odd.
            let v = add(mul(83, pow(5, e, what)?, what)?, 1, what)? / 2;
            Ok(BoundResult::exact(what, v))
        } else {
            let what = "gr-fan/f2-odd";
            let e = half_exp(k, 1, what)?;
            let v = add(mul(4, pow(5, e, what)?, what)?, 1, what)?;
            Ok(BoundResult::exact(what, v))
        };
    }
    if k % 2 == 0 {
        let what = "gr-fan/even";
        let e = half_exp(k, 2, what)?;
        let p = pow(5, e, what)?;
        let lo = add(mul(4 * nu, p, what)?, 1, what)?;
        let hi = add(mul(10 * nu, p, what)? - ceil_div(5 * nu, 2), 1, what)?;
        let mut out = BoundResult::interval(what, lo, hi);
        if n % 2 == 1 {
            out = out.with_note(format!(
                "upper bound evaluates 5n/2 as ceil({}/2) = {}",
                5 * nu,
                ceil_div(5 * nu, 2)
            ));
        }
        Ok(out)
    } else {
        let what = "gr-fan/odd";
        let e = half_exp(k, 1, what)?;
        let p = pow(5, e, what)?;
        let lo = add(mul(2 * nu, p, what)?, 1, what)?;
        let hi = add(
            ceil_div(mul(9 * nu, p, what)?, 2) - ceil_div(5 * nu, 2),
            1,
            what,
        )?;
        Ok(BoundResult::interval(what, lo, hi))
    }
}
