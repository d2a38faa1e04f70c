//! Built-in groups, expected-fact validation and manifest ingestion.

pub mod families;
pub mod named;

use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{ForgeError, Result};
use crate::pc::{PcGroup, PcPresentation, Subgroup};
use crate::structure;

pub use named::{g64, liebeck128, metacyclic, metacyclic_facts, MetacyclicFacts};

/// Fact names understood by manifests and built-in entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactName {
    Order,
    Class,
    Coclass,
    D,
    CenterInvariants,
    Exponent,
    Powerful,
    PCentral,
}

impl FactName {
    pub const ALL: [FactName; 8] = [
        FactName::Order,
        FactName::Class,
        FactName::Coclass,
        FactName::D,
        FactName::CenterInvariants,
        FactName::Exponent,
        FactName::Powerful,
        FactName::PCentral,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FactName::Order => "order",
            FactName::Class => "class",
            FactName::Coclass => "coclass",
            FactName::D => "d",
            FactName::CenterInvariants => "center_invariants",
            FactName::Exponent => "exponent",
            FactName::Powerful => "powerful",
            FactName::PCentral => "p_central",
        }
    }

    pub fn parse(s: &str) -> Option<FactName> {
        Self::ALL.into_iter().find(|f| f.as_str() == s)
    }

    /// Recomputes the fact for `g` in canonical text form.
    pub fn compute(self, g: &PcGroup) -> String {
        match self {
            FactName::Order => g.order().to_string(),
            FactName::Class => structure::nilpotency_class(g).to_string(),
            FactName::Coclass => match structure::coclass(g) {
                Ok(c) => c.to_string(),
                Err(_) => "undefined".into(),
            },
            FactName::D => structure::rank_d(g).to_string(),
            FactName::CenterInvariants => {
                let inv = structure::abelian_invariants(&structure::center(g)).expect("abelian");
                format_list(&inv)
            }
            FactName::Exponent => structure::exponent(g).to_string(),
            FactName::Powerful => structure::is_powerful(g).to_string(),
            FactName::PCentral => structure::is_p_central(g).to_string(),
        }
    }
}

impl fmt::Display for FactName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn format_list(v: &[u64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Canonical text for a user-written value (`[4, 2]`, `4,2` and `[4,2]` agree).
fn normalize_value(name: FactName, v: &str) -> String {
    let v = v.trim();
    match name {
        FactName::CenterInvariants => {
            let inner = v.trim_start_matches('[').trim_end_matches(']');
            let parts: Vec<&str> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            format!("[{}]", parts.join(","))
        }
        _ => v.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub name: FactName,
    pub value: String,
}

impl Fact {
    pub fn new(name: FactName, value: impl AsRef<str>) -> Self {
        Fact { name, value: normalize_value(name, value.as_ref()) }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub group: PcGroup,
    pub provenance: String,
    pub facts: Vec<Fact>,
}

impl CorpusEntry {
    /// Builds an entry, rejecting it unless every fact recomputes to its value.
    pub fn new(id: impl Into<String>, group: PcGroup, provenance: impl Into<String>, facts: Vec<Fact>) -> Result<Self> {
        let id = id.into();
        for f in &facts {
            let computed = f.name.compute(&group);
            if computed != f.value {
                return Err(ForgeError::Manifest(format!(
                    "{id}: {}: expected {}, computed {computed}",
                    f.name, f.value
                )));
            }
        }
        Ok(CorpusEntry { id, group, provenance: provenance.into(), facts })
    }

    pub fn prime(&self) -> u32 {
        self.group.prime()
    }

    pub fn order(&self) -> u64 {
        self.group.order()
    }
}

fn facts(list: &[(FactName, &str)]) -> Vec<Fact> {
    list.iter().map(|&(n, v)| Fact::new(n, v)).collect()
}

/// Every built-in group with its expected facts, validated on construction.
pub fn builtin() -> Result<Vec<CorpusEntry>> {
    use families::*;
    use FactName::*;
    let mut out = Vec::new();
    let mut push = |id: &str, g: PcGroup, prov: &str, f: &[(FactName, &str)]| -> Result<()> {
        out.push(CorpusEntry::new(id, g, prov, facts(f))?);
        Ok(())
    };
    for n in 3..=5u32 {
        let o = 1u64 << n;
        let cls = (n - 1).to_string();
        let f = [(Order, o.to_string()), (Class, cls), (Coclass, "1".into())];
        let f: Vec<(FactName, &str)> = f.iter().map(|(k, v)| (*k, v.as_str())).collect();
        push(&format!("D{o}"), dihedral(o)?, "dihedral family", &f)?;
        push(&format!("Q{o}"), quaternion(o)?, "generalized quaternion family", &f)?;
        if n >= 4 {
            push(&format!("SD{o}"), semidihedral(o)?, "semidihedral family", &f)?;
        }
    }
    push("M16", modular(2, 4)?, "modular family", &[(Order, "16"), (Class, "2")])?;
    push("M32", modular(2, 5)?, "modular family", &[(Order, "32"), (Class, "2")])?;
    push("C4xC2", abelian(2, &[4, 2])?, "abelian family", &[(Class, "1"), (D, "2")])?;
    push("C2xC2xC2", abelian(2, &[2, 2, 2])?, "abelian family", &[(Class, "1"), (D, "3")])?;
    push("C4xC4", abelian(2, &[4, 4])?, "abelian family", &[(Class, "1"), (Powerful, "true")])?;
    let d8 = dihedral(8)?;
    let q8 = quaternion(8)?;
    let c2 = abelian(2, &[2])?;
    let c4 = abelian(2, &[4])?;
    push("D8xC2", direct_product(&d8, &c2)?, "direct product", &[(Order, "16"), (Class, "2")])?;
    push("Q8xC2", direct_product(&q8, &c2)?, "direct product", &[(Order, "16"), (Class, "2")])?;
    push("D8xC4", direct_product(&d8, &c4)?, "direct product", &[(Order, "32"), (Class, "2")])?;
    push("D16xC2", direct_product(&dihedral(16)?, &c2)?, "direct product", &[(Order, "32"), (Class, "3")])?;
    for h in [quaternion(16)?, semidihedral(16)?] {
        let id = format!("{}xC2", h.name());
        push(&id, direct_product(&h, &c2)?, "direct product", &[(Order, "32"), (Class, "3")])?;
    }
    push("D8xC2xC2", direct_product(&d8, &abelian(2, &[2, 2])?)?, "direct product", &[(Order, "32"), (Class, "2")])?;
    push("ES27", extraspecial(3, false)?, "extraspecial, exponent p", &[(Order, "27"), (Class, "2"), (Exponent, "3")])?;
    push(
        "ES27b",
        extraspecial(3, true)?,
        "extraspecial, exponent p^2",
        &[(Order, "27"), (Class, "2"), (Exponent, "9")],
    )?;
    push("C9xC3", abelian(3, &[9, 3])?, "abelian family", &[(Class, "1")])?;
    push(
        "ES27xC3",
        direct_product(&extraspecial(3, false)?, &abelian(3, &[3])?)?,
        "direct product",
        &[(Order, "81"), (Class, "2")],
    )?;
    push("C3wrC3", wreath_c3()?, "wreath product", &[(Order, "81"), (Class, "3"), (Coclass, "1")])?;
    push(
        "ES125",
        extraspecial(5, false)?,
        "extraspecial, exponent p",
        &[(Order, "125"), (Class, "2"), (Exponent, "5")],
    )?;
    push(
        "C27:C9",
        split_metacyclic(3, 3, 2, 4)?,
        "split metacyclic, b^a = b^4",
        &[(Order, "243"), (Class, "3"), (Powerful, "true")],
    )?;
    push("G64", g64()?, "named powerful 2-group of order 64", &[(Order, "64"), (Class, "2"), (Powerful, "true")])?;
    push("L128", liebeck128()?, "Liebeck's group of order 128", &[(Order, "128"), (Class, "2"), (Powerful, "true")])?;
    push("Meta(3,2,2)", metacyclic(3, 2, 2)?, "metacyclic family", &[(Order, "128")])?;
    push("Meta(3,3,2)", metacyclic(3, 3, 2)?, "metacyclic family", &[(Order, "256")])?;
    Ok(out)
}

/// Looks up a built-in entry by id.
pub fn builtin_by_id(id: &str) -> Result<CorpusEntry> {
    builtin()?
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| ForgeError::InvalidArgument(format!("no built-in group `{id}`")))
}

/// Parses a manifest: blocks of `file <path>` followed by
/// `expect <fact> <value>` lines. Paths are relative to `base`.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<CorpusEntry>> {
    struct Block {
        line: usize,
        path: String,
        facts: Vec<Fact>,
    }
    let mut blocks: Vec<Block> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kw {
            "file" if !rest.is_empty() => {
                blocks.push(Block { line: line_no, path: rest.to_string(), facts: Vec::new() })
            }
            "expect" => {
                let Some(block) = blocks.last_mut() else {
                    return Err(ForgeError::Parse { line: line_no, msg: "expect before any file".into() });
                };
                let (name, value) = rest.split_once(char::is_whitespace).ok_or_else(|| ForgeError::Parse {
                    line: line_no,
                    msg: "expect needs a fact name and a value".into(),
                })?;
                let name = FactName::parse(name)
                    .ok_or_else(|| ForgeError::Parse { line: line_no, msg: format!("unknown fact `{name}`") })?;
                block.facts.push(Fact::new(name, value));
            }
            _ => return Err(ForgeError::Parse { line: line_no, msg: format!("unexpected `{line}`") }),
        }
    }
    let mut out = Vec::new();
    for b in blocks {
        let path = base.join(&b.path);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| ForgeError::Manifest(format!("line {}: cannot read {}: {e}", b.line, path.display())))?;
        let pres =
            PcPresentation::parse(&text).map_err(|e| ForgeError::Manifest(format!("{}: {e}", path.display())))?;
        let id = pres.name().to_string();
        let group = PcGroup::new(pres).map_err(|e| ForgeError::Manifest(format!("{id}: {e}")))?;
        out.push(CorpusEntry::new(id, group, format!("file {}", b.path), b.facts)?);
    }
    Ok(out)
}

pub fn load_manifest(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ForgeError::Manifest(format!("cannot read {}: {e}", path.display())))?;
    parse_manifest(&text, path.parent().unwrap_or(Path::new(".")))
}

/// The canonical subgroup list used for "for every normal subgroup" sweeps.
pub fn nontrivial_normal_subgroups(g: &PcGroup, cap: u64) -> Result<Vec<Subgroup>> {
    Ok(crate::pc::enumerate_normal_subgroups(g, cap)?.into_iter().filter(|n| !n.is_trivial()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        let all = builtin().unwrap();
        assert!(all.len() > 20);
        let mut ids: Vec<&str> = all.iter().map(|e| e.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
    }

    #[test]
    fn fact_mismatch_names_both_values() {
        let err = CorpusEntry::new("g64", g64().unwrap(), "", vec![Fact::new(FactName::Order, "63")]).unwrap_err();
        assert!(err.to_string().contains("order: expected 63, computed 64"), "{err}");
    }

    #[test]
    fn manifest_round_trip() {
        let dir = std::env::temp_dir().join(format!("forge-manifest-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("g64.pc"), g64().unwrap().presentation().serialize()).unwrap();
        let m = "# named groups\nfile g64.pc\nexpect order 64\nexpect center_invariants [4]\n";
        let entries = parse_manifest(m, &dir).unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].id, "G64");
        assert!(parse_manifest("", &dir).unwrap().is_empty());
        assert!(parse_manifest("expect order 1\n", &dir).is_err());
        assert!(parse_manifest("file g64.pc\nexpect colour red\n", &dir).is_err());
        let bad = parse_manifest("file g64.pc\nexpect order 63\n", &dir).unwrap_err();
        assert!(bad.to_string().contains("expected 63, computed 64"));
        std::fs::remove_dir_all(&dir).ok();
    }
}
