use crate::error::{Error, Result};
use crate::quasigroup::{Quasigroup, Symbol, MAX_ORDER};
use crate::transform::{LeaderString, LeaderSymbol, QString};

/// Parses the quasigroup text format: the order on the first line, then one
/// row per line. Lines starting with `#` and blank lines are skipped.
pub fn parse_quasigroup(text: &str) -> Result<Quasigroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, first) = lines
        .next()
        .ok_or_else(|| Error::syntax(1, "missing order"))?;
    let s: usize = first
        .parse()
        .map_err(|_| Error::syntax(line, format!("invalid order `{first}`")))?;
    if s == 0 || s > MAX_ORDER {
        return Err(Error::syntax(
            line,
            format!("order must be between 1 and {MAX_ORDER}"),
        ));
    }
    let mut rows = Vec::with_capacity(s);
    let mut last = line;
    for (line, text) in lines {
        if rows.len() == s {
            return Err(Error::syntax(line, "more rows than the order"));
        }
        let row = text
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::syntax(line, format!("invalid entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != s {
            return Err(Error::syntax(
                line,
                format!("expected {s} entries, found {}", row.len()),
            ));
        }
        rows.push(row);
        last = line;
    }
    if rows.len() < s {
        return Err(Error::syntax(
            last + 1,
            format!("expected {s} rows, found {}", rows.len()),
        ));
    }
    Quasigroup::validate(&rows)
}

/// Canonical text form: single spaces, newline-terminated rows, no comments.
pub fn format_quasigroup(q: &Quasigroup) -> String {
    let s = q.order();
    let mut out = format!("{s}\n");
    for row in q.table().chunks(s) {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a string over `Q`. Symbols are whitespace-separated; for orders up
/// to 10 a run of digits such as `01230` is also accepted.
pub fn parse_qstring(order: usize, text: &str) -> Result<QString> {
    let text = text.trim();
    let tokens: Vec<&str> = text.split_whitespace().collect();
    let symbols: Vec<usize> = if tokens.len() == 1 && order <= 10 && text.len() > 1 {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::syntax(1, format!("invalid symbol `{c}`")))
            })
            .collect::<Result<_>>()?
    } else {
        tokens
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::syntax(1, format!("invalid symbol `{t}`")))
            })
            .collect::<Result<_>>()?
    };
    let mut out = Vec::with_capacity(symbols.len());
    for v in symbols {
        if v >= order {
            return Err(Error::SymbolOutOfRange { symbol: v, order });
        }
        out.push(v as Symbol);
    }
    QString::new(order, out)
}

/// Whitespace-separated form, newline-free.
pub fn format_qstring(a: &QString) -> String {
    a.to_string()
}

/// Contiguous digits for orders up to 10, otherwise the spaced form.
pub fn format_qstring_compact(a: &QString) -> String {
    if a.order() <= 10 {
        a.symbols().iter().map(|v| char::from(b'0' + v)).collect()
    } else {
        a.to_string()
    }
}

/// Parses `3,3,i1,i0`. The empty string and `()` denote the empty leader
/// string. Symbol ranges are checked when the leaders are bound to a spec.
pub fn parse_leaders(text: &str) -> Result<LeaderString> {
    let text = text.trim();
    if text.is_empty() || text == "()" {
        return Ok(LeaderString::empty());
    }
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let bad = || Error::syntax(1, format!("invalid leader `{t}`"));
            if let Some(j) = t.strip_prefix('i') {
                j.parse().map(LeaderSymbol::Index).map_err(|_| bad())
            } else {
                let v: usize = t.parse().map_err(|_| bad())?;
                Symbol::try_from(v)
                    .map(LeaderSymbol::Const)
                    .map_err(|_| Error::SymbolOutOfRange {
                        symbol: v,
                        order: MAX_ORDER,
                    })
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(LeaderString)
}

/// Comma-separated tokens; the empty leader string is written `()`.
pub fn format_leaders(l: &LeaderString) -> String {
    if l.is_empty() {
        "()".to_string()
    } else {
        l.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::random_latin;
    use crate::quasigroup::fixtures::{q355, trivial};
    use proptest::prelude::*;

    #[test]
    fn quasigroup_examples() {
        let q = parse_quasigroup("4\n2 1 0 3\n3 0 1 2\n1 2 3 0\n0 3 2 1\n").unwrap();
        assert_eq!(q, q355());
        assert_eq!(parse_quasigroup("1\n0\n").unwrap(), trivial());
        assert!(matches!(
            parse_quasigroup("4\n2 1 0 3\n"),
            Err(Error::Syntax { line: 3, .. })
        ));
    }

    #[test]
    fn quasigroup_comments_and_whitespace() {
        let text = "# table one\n4   \n2 1 0 3\n\n# middle\n3  0 1 2  \n1 2 3 0\n0 3 2 1";
        let q = parse_quasigroup(text).unwrap();
        assert_eq!(
            format_quasigroup(&q),
            "4\n2 1 0 3\n3 0 1 2\n1 2 3 0\n0 3 2 1\n"
        );
    }

    #[test]
    fn quasigroup_errors() {
        assert!(matches!(parse_quasigroup(""), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_quasigroup("x\n"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(parse_quasigroup("0\n"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_quasigroup("2\n0 1\n1\n"),
            Err(Error::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_quasigroup("2\n0 1\n1 0\n0 1\n"),
            Err(Error::Syntax { line: 4, .. })
        ));
        assert!(matches!(
            parse_quasigroup("2\n0 a\n1 0\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert_eq!(
            parse_quasigroup("2\n0 1\n0 1\n"),
            Err(Error::ColNotPermutation(0))
        );
        assert_eq!(
            parse_quasigroup("2\n0 2\n1 0\n"),
            Err(Error::EntryOutOfRange { row: 0, col: 1 })
        );
    }

    #[test]
    fn string_forms() {
        let a = parse_qstring(4, "01230").unwrap();
        assert_eq!(a.symbols(), &[0, 1, 2, 3, 0]);
        assert_eq!(parse_qstring(4, " 0 1 2 3 0\n").unwrap(), a);
        assert_eq!(format_qstring(&a), "0 1 2 3 0");
        assert_eq!(format_qstring_compact(&a), "01230");
        assert_eq!(parse_qstring(4, "3").unwrap().symbols(), &[3]);
        assert!(parse_qstring(4, "").unwrap().is_empty());
        assert_eq!(parse_qstring(12, "11 3").unwrap().symbols(), &[11, 3]);
        assert_eq!(parse_qstring(12, "11").unwrap().symbols(), &[11]);
        assert!(matches!(
            parse_qstring(4, "0140"),
            Err(Error::SymbolOutOfRange { symbol: 4, .. })
        ));
        assert!(matches!(parse_qstring(4, "0x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn leader_forms() {
        use LeaderSymbol::*;
        let l = parse_leaders("3,3,i1,i0").unwrap();
        assert_eq!(l.0, vec![Const(3), Const(3), Index(1), Index(0)]);
        assert_eq!(format_leaders(&l), "3,3,i1,i0");
        assert_eq!(
            parse_leaders(" 3, i12 ").unwrap().0,
            vec![Const(3), Index(12)]
        );
        assert!(parse_leaders("").unwrap().is_empty());
        assert!(parse_leaders("()").unwrap().is_empty());
        assert_eq!(format_leaders(&LeaderString::empty()), "()");
        assert!(parse_leaders("3,,1").is_err());
        assert!(parse_leaders("ix").is_err());
        assert!(parse_leaders("300").is_err());
    }

    proptest! {
        #[test]
        fn quasigroup_round_trip(s in 1usize..12, seed in any::<u64>()) {
            let q = random_latin(s, seed);
            let text = format_quasigroup(&q);
            prop_assert_eq!(parse_quasigroup(&text).unwrap(), q.clone());
            prop_assert_eq!(format_quasigroup(&parse_quasigroup(&text).unwrap()), text);
        }

        #[test]
        fn string_round_trip(s in 1usize..20, v in proptest::collection::vec(any::<u8>(), 0..30)) {
            let a = QString::new(s, v.iter().map(|x| x % s as u8).collect()).unwrap();
            prop_assert_eq!(parse_qstring(s, &format_qstring(&a)).unwrap(), a.clone());
            prop_assert_eq!(parse_qstring(s, &format_qstring_compact(&a)).unwrap(), a);
        }

        #[test]
        fn leader_round_trip(v in proptest::collection::vec((any::<bool>(), 0usize..256), 0..8)) {
            let l = LeaderString(
                v.into_iter()
                    .map(|(c, x)| if c { LeaderSymbol::Const(x as u8) } else { LeaderSymbol::Index(x) })
                    .collect(),
            );
            prop_assert_eq!(parse_leaders(&format_leaders(&l)).unwrap(), l);
        }
    }
}
