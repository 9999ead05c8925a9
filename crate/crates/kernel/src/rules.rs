//! The rule catalogue, kept as data in `data/rules.txt`.

const DATA: &str = include_str!("../data/rules.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub name: &'static str,
    pub group: &'static str,
    /// Some premise other than context formation can fail, so the rule
    /// needs a negative test as well.
    pub failable: bool,
}

pub fn rules() -> Vec<Rule> {
    let mut group = "";
    let mut out = Vec::new();
    for line in DATA.lines() {
        let line = line.trim();
        if let Some(g) = line.strip_prefix("## ") {
            group = g;
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, kind) = line
            .split_once('\t')
            .unwrap_or_else(|| panic!("malformed rule line: {line}"));
        out.push(Rule {
            name,
            group,
            failable: match kind {
                "failable" => true,
                "total" => false,
                other => panic!("unknown rule kind {other}"),
            },
        });
    }
    out
}

pub fn find(name: &str) -> Option<Rule> {
    rules().into_iter().find(|r| r.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_is_well_formed() {
        let rs = rules();
        assert_eq!(rs.len(), 106);
        let mut names: Vec<_> = rs.iter().map(|r| r.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), rs.len());
        assert!(find("term/comp").unwrap().failable);
        assert!(!find("cx/emp").unwrap().failable);
    }
}
