//! Textual forms of command inputs: complex numbers as `re+imj`, lists as
//! comma-separated values.

use num_complex::Complex64;

pub fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a real number"))?;
    if !v.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(v)
}

/// Accepts `1.5`, `2j`, `-j`, `1.5-2e-3j`; `i` is accepted in place of `j`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("`{s}` is not a number of the form re+imj");
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['j', 'i']) else {
        return parse_real(&t).map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        v => v,
    };
    let re = parse_real(re).map_err(|_| bad())?;
    let im = parse_real(im).map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    let s = s.trim();
    s.split(',').filter(move |_| !s.is_empty())
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexList(pub Vec<Complex64>);

pub fn parse_complex_list(s: &str) -> Result<ComplexList, String> {
    split_list(s).map(parse_complex).collect::<Result<_, _>>().map(ComplexList)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RealList(pub Vec<f64>);

pub fn parse_real_list(s: &str) -> Result<RealList, String> {
    split_list(s).map(parse_real).collect::<Result<_, _>>().map(RealList)
}

/// Shortest round-trip digits, in exponent form for very large or small magnitudes.
pub fn format_real(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Inverse of [`parse_complex`].
pub fn format_complex(z: Complex64) -> String {
    let (re, im) = (format_real(z.re), format_real(z.im));
    if z.im == 0.0 {
        re
    } else if z.im < 0.0 {
        format!("{re}{im}j")
    } else {
        format!("{re}+{im}j")
    }
}

pub fn format_complex_list(v: &[Complex64]) -> String {
    v.iter().map(|&z| format_complex(z)).collect::<Vec<_>>().join(",")
}

pub fn format_real_list(v: &[f64]) -> String {
    v.iter().map(|&x| format_real(x)).collect::<Vec<_>>().join(",")
}

/// `key=value` pairs echoed into output records.
#[derive(Debug, Clone, Default)]
pub struct Inputs(Vec<(String, String)>);

impl Inputs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<String>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn c(self, key: &str, z: Complex64) -> Self {
        self.with(key, format_complex(z))
    }

    pub fn r(self, key: &str, x: f64) -> Self {
        self.with(key, format_real(x))
    }

    pub fn render(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    }
}
