//! Dirichlet characters for odd moduli and the generalized q-Euler numbers
//! `E_{n,chi,q}` attached to them.
//!
//! Characters are represented exactly: the value at a unit residue `a` is
//! stored as the exponent `k` of a primitive `m`-th root of unity, where `m`
//! is the order of the character. No floating point enters until a caller
//! asks for a complex value, so orthogonality and conductor computations are
//! exact integer arithmetic.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::euler::{euler_polynomial, two_bracket};
use crate::field::{q_bracket, rat_int, QPolynomial, QRationalFunction};

/// A Dirichlet character of odd modulus `f`, stored by root-of-unity
/// exponents. `exponents[a]` is `Some(k)` with `chi(a) = e^{2 pi i k/m}` for
/// units and `None` where the character vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirichletCharacter {
    modulus: u64,
    order: u64,
    exponents: Vec<Option<u64>>,
    index: usize,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Multiplicative order: the smallest `m` with `chi^m` trivial.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Position in the canonical enumeration returned by
    /// [`characters_mod`]; characters are sorted by order, then by their
    /// exponent vectors.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Real characters take values in {-1, 0, 1} only.
    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    /// The root-of-unity exponent at `a`, reduced mod the modulus. `None`
    /// where the character vanishes.
    pub fn exponent(&self, a: u64) -> Option<u64> {
        self.exponents[(a % self.modulus) as usize]
    }

    pub fn value_complex(&self, a: u64) -> Complex64 {
        match self.exponent(a) {
            None => Complex64::new(0.0, 0.0),
            Some(k) => {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (self.order as f64);
                Complex64::new(theta.cos(), theta.sin())
            }
        }
    }

    /// Exact value for real characters: 1, -1 or 0.
    pub fn value_real(&self, a: u64) -> Result<BigRational> {
        if !self.is_real() {
            return Err(Error::Domain(format!(
                "character {self} has order {} > 2 and takes non-real values",
                self.order
            )));
        }
        Ok(match self.exponent(a) {
            None => BigRational::zero(),
            Some(0) => BigRational::one(),
            Some(_) => -BigRational::one(),
        })
    }

    /// Smallest modulus `d` dividing `f` such that the character factors
    /// through `(Z/d)^*`.
    pub fn conductor(&self) -> u64 {
        let f = self.modulus;
        let mut divisors: Vec<u64> = (1..=f).filter(|d| f.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        'outer: for d in divisors {
            // chi factors through Z/d iff chi(a) = 1 whenever a = 1 (mod d).
            let mut a = 1u64;
            while a < f.max(2) {
                if a.gcd(&f) == 1 && self.exponents[(a % f) as usize] != Some(0) {
                    continue 'outer;
                }
                a += d;
            }
            return d;
        }
        f
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// The label used by the command line and report formats, `f.index`.
    pub fn label(&self) -> String {
        format!("{}.{}", self.modulus, self.index)
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_{}", self.label())
    }
}

fn powmod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// A generator of the cyclic group `(Z/p^e)^*` for odd prime `p`.
fn primitive_root(pe: u64, group_order: u64) -> u64 {
    let prime_divs: Vec<u64> = factorize(group_order).into_iter().map(|(p, _)| p).collect();
    for g in 2..pe {
        if g.gcd(&pe) != 1 {
            continue;
        }
        if prime_divs
            .iter()
            .all(|&ell| powmod(g, group_order / ell, pe) != 1)
        {
            return g;
        }
    }
    unreachable!("every (Z/p^e)^* with p odd is cyclic");
}

/// All Dirichlet characters of odd modulus `f`, in a deterministic canonical
/// order: ascending by character order, ties broken by the exponent vectors.
/// The trivial character always comes first.
pub fn characters_mod(f: u64) -> Result<Vec<DirichletCharacter>> {
    if f == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    if f.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "modulus must be odd, got {f}; even conductors need the two-adic unit structure that this family excludes"
        )));
    }
    if f == 1 {
        return Ok(vec![DirichletCharacter {
            modulus: 1,
            order: 1,
            exponents: vec![Some(0)],
            index: 0,
        }]);
    }

    // Split (Z/f)^* along the odd prime power factors; each factor is cyclic.
    struct Component {
        pe: u64,
        size: u64,              // phi(p^e)
        dlog: Vec<Option<u64>>, // discrete log base the chosen generator
    }
    let mut comps = Vec::new();
    for (p, e) in factorize(f) {
        let pe = p.pow(e);
        let size = pe / p * (p - 1);
        let g = primitive_root(pe, size);
        let mut dlog = vec![None; pe as usize];
        let mut acc = 1u64;
        for j in 0..size {
            dlog[acc as usize] = Some(j);
            acc = (acc as u128 * g as u128 % pe as u128) as u64;
        }
        comps.push(Component { pe, size, dlog });
    }
    let big_order = comps.iter().fold(1u64, |l, c| l.lcm(&c.size));

    // Discrete logs of every unit residue, one pass.
    let units: Vec<(u64, Vec<u64>)> = (0..f)
        .filter(|a| a.gcd(&f) == 1)
        .map(|a| {
            let logs = comps
                .iter()
                .map(|c| c.dlog[(a % c.pe) as usize].expect("unit residue"))
                .collect();
            (a, logs)
        })
        .collect();

    let mut chars = Vec::new();
    let mut tuple = vec![0u64; comps.len()];
    loop {
        // Exponent of chi(a) relative to a primitive big_order-th root.
        let mut raw = Vec::with_capacity(units.len());
        for (_, logs) in &units {
            let mut exp: u128 = 0;
            for ((j, c), t) in tuple.iter().zip(&comps).zip(logs) {
                exp += (big_order / c.size) as u128 * (*j as u128) * (*t as u128);
            }
            raw.push((exp % big_order as u128) as u64);
        }
        let shared = raw.iter().fold(big_order, |g, &e| g.gcd(&e));
        let order = big_order / shared;
        let mut exponents = vec![None; f as usize];
        for ((a, _), &e) in units.iter().zip(&raw) {
            exponents[*a as usize] = Some(e / shared);
        }
        chars.push(DirichletCharacter {
            modulus: f,
            order,
            exponents,
            index: 0,
        });

        // Advance the mixed-radix counter over generator images.
        let mut i = 0;
        loop {
            if i == tuple.len() {
                break;
            }
            tuple[i] += 1;
            if tuple[i] < comps[i].size {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == tuple.len() {
            break;
        }
    }

    chars.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| a.exponents.cmp(&b.exponents))
    });
    for (i, c) in chars.iter_mut().enumerate() {
        c.index = i;
    }
    Ok(chars)
}

/// Resolve a character spec of the form `f.index`, `f.trivial` or
/// `f.nontrivial` (the last one only when the modulus has exactly one
/// nontrivial character).
pub fn character_from_spec(spec: &str) -> Result<DirichletCharacter> {
    let (fs, sel) = spec.split_once('.').ok_or_else(|| {
        Error::Parse(format!(
            "character spec '{spec}' is not of the form f.index"
        ))
    })?;
    let f: u64 = fs
        .parse()
        .map_err(|_| Error::Parse(format!("bad modulus in character spec '{spec}'")))?;
    let chars = characters_mod(f)?;
    match sel {
        "trivial" => Ok(chars[0].clone()),
        "nontrivial" => {
            if chars.len() == 2 {
                Ok(chars[1].clone())
            } else {
                Err(Error::Parse(format!(
                    "'{spec}' is ambiguous: modulus {f} has {} nontrivial characters",
                    chars.len() - 1
                )))
            }
        }
        idx => {
            let i: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in character spec '{spec}'")))?;
            chars.get(i).cloned().ok_or_else(|| {
                Error::Parse(format!("modulus {f} has only {} characters", chars.len()))
            })
        }
    }
}

/// The coefficient family behind `E_{n,chi,q}` for a fixed odd modulus `f`:
///
/// ```text
/// c_a = ([2]_q/[2]_{q^f}) f^n (-1)^a q^a E_{n,q^f}(a/f),   a = 0..f-1,
/// E_{n,chi,q} = sum_a chi(a) c_a.
/// ```
///
/// The coefficients do not depend on the character, so one family serves
/// every character of the modulus; summing them plain recovers `E_{n,q}`.
#[derive(Clone, Debug)]
pub struct GeneralizedEulerNumber {
    modulus: u64,
    degree: usize,
    coeffs: Vec<QRationalFunction>,
}

impl GeneralizedEulerNumber {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, a: u64) -> &QRationalFunction {
        &self.coeffs[(a % self.modulus) as usize]
    }

    pub fn coeffs(&self) -> &[QRationalFunction] {
        &self.coeffs
    }

    /// `sum_a c_a`, which must equal `E_{n,q}`; the distribution identity in
    /// disguise.
    pub fn sum_coeffs(&self) -> QRationalFunction {
        self.coeffs.iter().cloned().sum()
    }

    /// `E_{n,chi,q}` as an exact element of Q(q); only real characters keep
    /// the value inside the field.
    pub fn value_exact(&self, chi: &DirichletCharacter) -> Result<QRationalFunction> {
        self.check_modulus(chi)?;
        let mut acc = QRationalFunction::zero();
        for (a, c) in self.coeffs.iter().enumerate() {
            let s = chi.value_real(a as u64)?;
            acc = &acc + &c.mul_rational(&s);
        }
        Ok(acc)
    }

    /// `E_{n,chi,q}` at a numeric `0 < q0 < 1` for an arbitrary character.
    pub fn value_complex(&self, chi: &DirichletCharacter, q0: f64) -> Result<Complex64> {
        self.check_modulus(chi)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, c) in self.coeffs.iter().enumerate() {
            let w = chi.value_complex(a as u64);
            if w.norm() == 0.0 {
                continue;
            }
            acc += w * c.eval_f64(q0)?;
        }
        Ok(acc)
    }

    fn check_modulus(&self, chi: &DirichletCharacter) -> Result<()> {
        if chi.modulus() != self.modulus {
            return Err(Error::Domain(format!(
                "character modulus {} does not match coefficient modulus {}",
                chi.modulus(),
                self.modulus
            )));
        }
        Ok(())
    }
}

/// Build the coefficient family for degree `n` and odd modulus `f`.
pub fn generalized_euler_number(n: usize, f: u64) -> Result<GeneralizedEulerNumber> {
    if f == 0 || f.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "modulus must be odd and positive, got {f}"
        )));
    }
    let prefactor =
        &two_bracket() / &QRationalFunction::from_poly(q_bracket(2).substitute_power(f as u32));
    let scale = prefactor.mul_rational(&rat_int(f as i64).pow(n as i32));
    let shifted = euler_polynomial(n).substitute_q_power(f as u32);
    let mut coeffs = Vec::with_capacity(f as usize);
    for a in 0..f {
        let x = BigRational::new((a as i64).into(), (f as i64).into());
        let value = shifted.eval_rational(&x);
        let sign_q = QRationalFunction::from_poly(QPolynomial::monomial(
            if a % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            },
            a as usize,
        ));
        coeffs.push(&(&scale * &sign_q) * &value);
    }
    Ok(GeneralizedEulerNumber {
        modulus: f,
        degree: n,
        coeffs,
    })
}
