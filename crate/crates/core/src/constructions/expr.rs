use std::fmt;
use std::path::PathBuf;

/// A word in the generators of a base group: `(generator index, exponent)`
/// factors, read left to right. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<(usize, i64)>);

/// An automorphism given by generator images. Generators that are not listed
/// are fixed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AutSpec {
    pub images: Vec<(usize, Word)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Atom { name: String, params: Vec<u64> },
    DirectProduct(Vec<GroupExpr>),
    SemidirectByAut { base: Box<GroupExpr>, auts: Vec<AutSpec> },
    ShiftProduct { factor: Box<GroupExpr>, copies: usize },
    FromFile(PathBuf),
}

impl GroupExpr {
    pub fn atom(name: &str, params: &[u64]) -> Self {
        GroupExpr::Atom {
            name: name.to_string(),
            params: params.to_vec(),
        }
    }
}

impl AutSpec {
    fn short_names(&self) -> bool {
        self.images
            .iter()
            .all(|(g, w)| *g == 0 && w.0.iter().all(|(h, _)| *h == 0))
    }
}

fn gen_name(i: usize, short: bool) -> String {
    if short {
        "g".to_string()
    } else {
        format!("g{}", i + 1)
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, w: &Word, short: bool) -> fmt::Result {
    if w.0.is_empty() {
        return write!(f, "1");
    }
    for (i, (g, e)) in w.0.iter().enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        write!(f, "{}", gen_name(*g, short))?;
        if *e != 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for AutSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let short = self.short_names();
        write!(f, "[")?;
        for (i, (g, w)) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> ", gen_name(*g, short))?;
            write_word(f, w, short)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Atom { name, params } => {
                write!(f, "{name}")?;
                if !params.is_empty() {
                    let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
                    write!(f, "({})", ps.join(","))?;
                }
                Ok(())
            }
            GroupExpr::DirectProduct(factors) => {
                write!(f, "DirectProduct(")?;
                for (i, e) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            GroupExpr::SemidirectByAut { base, auts } => {
                write!(f, "SemidirectByAut({base}")?;
                for a in auts {
                    write!(f, ", {a}")?;
                }
                write!(f, ")")
            }
            GroupExpr::ShiftProduct { factor, copies } => {
                write!(f, "ShiftProduct({factor}, {copies})")
            }
            GroupExpr::FromFile(path) => write!(f, "File({:?})", path.display().to_string()),
        }
    }
}
