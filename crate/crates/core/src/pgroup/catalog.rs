//! Built-in p-groups.
//!
//! Element numbering per presentation:
//!
//! * `Cn`: `a^i` is index `i`.
//! * direct products `A × B`: `(a, b)` is index `a·|B| + b`; `Cn^k` is the
//!   k-fold product and `C4xC2`-style names are products of cyclic factors.
//! * `D8 = ⟨r, s | r⁴, s², srs⁻¹ = r⁻¹⟩`: `r^i s^j` is index `i + 4j`.
//! * `M16 = ⟨a, b | a⁸, b², bab⁻¹ = a⁵⟩`: `a^i b^j` is index `i + 8j`.
//! * `Q8`: indices 0..8 are `1, −1, i, −i, j, −j, k, −k`.
//! * `Heis3`: upper unitriangular 3×3 matrices over GF(3) with entries
//!   `(a, b, c)` in positions (1,2), (2,3), (1,3); index `a + 3b + 9c`.
//!
//! Products of built-ins are written with `×`, e.g. `Q8×C2`.

use super::PGroup;
use crate::arith::prime_power;
use crate::error::{Error, Result};

/// Index of the quaternion `i` in [`catalog`]`("Q8")`.
pub const Q8_I: usize = 2;

/// Names accepted by [`catalog`] besides `Cn`, `Cn^k` and `×`-products.
pub const NAMED: [&str; 4] = ["D8", "Q8", "Heis3", "M16"];

pub fn catalog(name: &str) -> Result<PGroup> {
    let factors: Vec<&str> = name.split('×').map(str::trim).collect();
    if factors.iter().any(|f| f.is_empty()) {
        return Err(Error::UnknownGroup(name.to_string()));
    }
    let mut acc = single(factors[0], name)?;
    for f in &factors[1..] {
        let next = single(f, name)?;
        acc = direct_product(&acc, &next)?;
    }
    Ok(acc.rename(name))
}

fn single(factor: &str, full: &str) -> Result<PGroup> {
    let unknown = || Error::UnknownGroup(full.to_string());
    match factor {
        "D8" => return metacyclic(4, 2, 3, "D8"),
        "M16" => return metacyclic(8, 2, 5, "M16"),
        "Q8" => return quaternion(),
        "Heis3" => return heisenberg3(),
        _ => {}
    }
    // C4xC2, C9xC3, …: a product of cyclic factors
    let cyclic_parts: Vec<&str> = factor.split('x').collect();
    if cyclic_parts.len() > 1 {
        let mut acc = cyclic_power(cyclic_parts[0]).ok_or_else(unknown)??;
        for part in &cyclic_parts[1..] {
            let next = cyclic_power(part).ok_or_else(unknown)??;
            acc = direct_product(&acc, &next)?;
        }
        return Ok(acc.rename(factor));
    }
    cyclic_power(factor).ok_or_else(unknown)?
}

/// Parses `Cn` or `Cn^k`; `None` if the name has a different shape.
fn cyclic_power(name: &str) -> Option<Result<PGroup>> {
    let rest = name.strip_prefix('C')?;
    let (n, k) = match rest.split_once('^') {
        Some((n, k)) => (n.parse::<u64>().ok()?, k.parse::<u32>().ok()?),
        None => (rest.parse::<u64>().ok()?, 1),
    };
    if k == 0 {
        return None;
    }
    let Some((p, _)) = prime_power(n) else {
        return Some(Err(Error::InvalidGroup(format!("C{n} is not a p-group"))));
    };
    let order = n.checked_pow(k).filter(|&o| o <= super::MAX_ORDER as u64);
    let Some(order) = order else {
        return Some(Err(Error::InvalidGroup(format!("{name} exceeds order {}", super::MAX_ORDER))));
    };
    let c = cyclic(p, n as usize);
    let mut acc = match c {
        Ok(c) => c,
        Err(e) => return Some(Err(e)),
    };
    for _ in 1..k {
        let c = cyclic(p, n as usize).expect("constructed above");
        acc = match direct_product(&acc, &c) {
            Ok(g) => g,
            Err(e) => return Some(Err(e)),
        };
    }
    debug_assert_eq!(acc.order() as u64, order);
    Some(Ok(acc.rename(name)))
}

pub fn cyclic(p: u64, n: usize) -> Result<PGroup> {
    PGroup::from_fn(p, n, format!("C{n}"), |a, b| (a + b) % n)
}

pub fn direct_product(a: &PGroup, b: &PGroup) -> Result<PGroup> {
    if a.p() != b.p() {
        return Err(Error::InvalidGroup(format!(
            "product of a {}-group and a {}-group is not a p-group",
            a.p(),
            b.p()
        )));
    }
    let nb = b.order();
    let n = a.order() * nb;
    if n > super::MAX_ORDER {
        return Err(Error::InvalidGroup(format!("product order {n} exceeds {}", super::MAX_ORDER)));
    }
    PGroup::from_fn(a.p() as u64, n, format!("{}×{}", a.name(), b.name()), |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    })
}

/// `⟨a, b | a^n, b^m, b a b⁻¹ = a^r⟩` with elements `a^i b^j ↦ i + n·j`.
fn metacyclic(n: usize, m: usize, r: usize, name: &str) -> Result<PGroup> {
    let p = prime_power((n * m) as u64).map(|(p, _)| p).unwrap_or(0);
    // b^j a^k b^-j = a^(k r^j)
    let twist = |j: usize, k: usize| {
        let mut e = k;
        for _ in 0..j {
            e = e * r % n;
        }
        e
    };
    PGroup::from_fn(p, n * m, name, |x, y| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        (i + twist(j, k)) % n + n * ((j + l) % m)
    })
}

fn quaternion() -> Result<PGroup> {
    // units 0..4 = 1, i, j, k; u*v = sign * unit
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    PGroup::from_fn(2, 8, "Q8", |x, y| {
        let (neg, u) = (x % 2 == 1, x / 2);
        let (neg2, v) = (y % 2 == 1, y / 2);
        let (s, w) = UNIT[u][v];
        2 * w + usize::from(neg ^ neg2 ^ s)
    })
}

fn heisenberg3() -> Result<PGroup> {
    PGroup::from_fn(3, 27, "Heis3", |x, y| {
        let (a, b, c) = (x % 3, x / 3 % 3, x / 9);
        let (d, e, f) = (y % 3, y / 3 % 3, y / 9);
        (a + d) % 3 + 3 * ((b + e) % 3) + 9 * ((c + f + a * e) % 3)
    })
}
