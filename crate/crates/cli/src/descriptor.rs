//! Descriptor flags shared by the subcommands.

use clap::Args;
use ruledstab::catalog::parse_divisor;
use ruledstab::scalar::parse_scalar;
use ruledstab::serial::descriptor_from_json;
use ruledstab::{
    DivisorialDescriptor, GluedDescriptor, LiftedGL, Mat2, Q, StabError, StabilityDescriptor,
};

type Result<T> = std::result::Result<T, StabError>;

#[derive(Args, Debug, Clone, Default)]
pub struct DescriptorArgs {
    /// Geometric condition given by `--B` and `--omega`.
    #[arg(long, conflicts_with = "glued")]
    pub divisorial: bool,

    /// Glued condition given by `--A1` and `--A2`.
    #[arg(long)]
    pub glued: bool,

    /// B-field, e.g. "-1/2*C0+f".
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<String>,

    /// Polarization, e.g. "C0+f".
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,

    /// Group translate applied to a divisorial condition.
    #[arg(long, allow_hyphen_values = true)]
    pub translate: Option<String>,

    /// Translate on the first factor: "a,b;c,d;shift=k" gives the matrix
    /// M1 (not its inverse) with f1(0) in [k, k+1); "id" is the identity.
    #[arg(long = "A1", allow_hyphen_values = true)]
    pub a1: Option<String>,

    /// Translate on the second factor, same syntax as `--A1`.
    #[arg(long = "A2", allow_hyphen_values = true)]
    pub a2: Option<String>,

    /// Full descriptor as JSON.
    #[arg(long, conflicts_with_all = ["divisorial", "glued"])]
    pub descriptor: Option<String>,
}

fn input(msg: impl Into<String>) -> StabError {
    StabError::Input(msg.into())
}

pub fn rational(text: &str) -> Result<Q> {
    parse_scalar(text).ok_or_else(|| input(format!("not a rational number: {text:?}")))
}

/// Parse `"id"`, `"a,b;c,d"`, `"a,b;c,d;shift=k"` (winding of `f(0)`), or
/// `"a,b;c,d;n=k"` (raw even offset from the canonical lift).
pub fn parse_lifted(text: &str) -> Result<LiftedGL<Q>> {
    let t = text.trim();
    if t == "id" {
        return Ok(LiftedGL::identity());
    }
    let parts: Vec<&str> = t.split(';').map(str::trim).collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(input(format!("expected \"a,b;c,d[;shift=k]\", got {text:?}")));
    }
    let row = |r: &str| -> Result<(Q, Q)> {
        match r.split(',').map(str::trim).collect::<Vec<_>>()[..] {
            [x, y] => Ok((rational(x)?, rational(y)?)),
            _ => Err(input(format!("matrix row needs two entries: {r:?}"))),
        }
    };
    let (a, b) = row(parts[0])?;
    let (c, d) = row(parts[1])?;
    let m = Mat2::new(a, b, c, d);
    let Some(lift) = parts.get(2) else {
        return LiftedGL::new(m, 0);
    };
    let int = |v: &str| v.trim().parse::<i64>().map_err(|_| input(format!("bad integer {v:?}")));
    match lift.split_once('=') {
        Some(("shift", k)) => LiftedGL::with_winding(m, int(k)?),
        Some(("n", k)) => LiftedGL::new(m, int(k)?),
        _ => Err(input(format!("expected shift=k or n=k, got {lift:?}"))),
    }
}

impl DescriptorArgs {
    pub fn resolve(&self) -> Result<StabilityDescriptor<Q>> {
        if let Some(json) = &self.descriptor {
            return descriptor_from_json(json);
        }
        if self.glued {
            let a1 = self.a1.as_deref().ok_or_else(|| input("--glued needs --A1"))?;
            let a2 = self.a2.as_deref().unwrap_or("id");
            return Ok(StabilityDescriptor::Glued(GluedDescriptor::new(
                parse_lifted(a1)?,
                parse_lifted(a2)?,
            )));
        }
        if self.divisorial {
            let b = parse_divisor(self.b.as_deref().unwrap_or("0"))?;
            let omega = parse_divisor(self.omega.as_deref().ok_or_else(|| input("--divisorial needs --omega"))?)?;
            let mut d = DivisorialDescriptor::new(b, omega);
            if let Some(t) = &self.translate {
                d = d.with_translate(parse_lifted(t)?);
            }
            return Ok(StabilityDescriptor::Divisorial(d));
        }
        Err(input("a descriptor is required: --divisorial, --glued, or --descriptor"))
    }

    pub fn resolve_glued(&self) -> Result<GluedDescriptor<Q>> {
        match self.resolve()? {
            StabilityDescriptor::Glued(g) => Ok(g),
            StabilityDescriptor::Divisorial(_) => Err(input("this command needs a glued descriptor")),
        }
    }
}
