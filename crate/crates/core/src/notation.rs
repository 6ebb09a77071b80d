//! Brace notation for games and the compact octal ruleset notation.
//!
//! ```text
//! game     := rational | '{' opts '|' rational '|' opts '}'
//! opts     := '.' | game (',' game)*
//! rational := ['+'|'-'] digits ['/' digits]
//! ```
//!
//! Whitespace is insignificant. A bare rational is the leaf `{.|n|.}`, and
//! the printer always uses that short form for leaves.
//!
//! Rulesets are written `0.d1d2..dk:p1,p2,..,pk`; the `0.` prefix and the
//! point list are both optional.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::game::{node, GameId};
use crate::octal::OctalRuleset;
use crate::score::Score;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected `{}`, found `{}`", c as char, x as char)),
            None => self.err(format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn game(&mut self) -> Result<GameId> {
        match self.peek() {
            Some(b'{') => {
                self.pos += 1;
                let left = self.options()?;
                self.expect(b'|')?;
                let score = self.rational()?;
                match self.peek() {
                    Some(b'|') => self.pos += 1,
                    _ => return self.err("expected `|` after the score slot"),
                }
                let right = self.options()?;
                self.expect(b'}')?;
                Ok(node(left, score, right))
            }
            Some(_) => Ok(node(Vec::new(), self.rational()?, Vec::new())),
            None => self.err("expected a game, found end of input"),
        }
    }

    fn options(&mut self) -> Result<Vec<GameId>> {
        match self.peek() {
            Some(b'.') => {
                self.pos += 1;
                Ok(Vec::new())
            }
            Some(b'|') | Some(b'}') => self.err("empty option set must be written `.`"),
            _ => {
                let mut opts = vec![self.game()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    opts.push(self.game()?);
                }
                Ok(opts)
            }
        }
    }

    fn rational(&mut self) -> Result<Score> {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        if matches!(self.src.get(end), Some(b'+') | Some(b'-')) {
            end += 1;
        }
        while end < self.src.len() && (self.src[end].is_ascii_digit() || self.src[end] == b'/') {
            end += 1;
        }
        let text = std::str::from_utf8(&self.src[start..end]).unwrap_or("");
        if text.is_empty() {
            return self.err("expected a rational number");
        }
        match text.parse::<Score>() {
            Ok(s) => {
                self.pos = end;
                Ok(s)
            }
            Err(Error::ZeroDenominator) => self.err("zero denominator"),
            Err(_) => self.err(format!("malformed rational `{text}`")),
        }
    }
}

pub fn parse_game(text: &str) -> Result<GameId> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let g = p.game()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(g)
}

/// One game per line; blank lines and `#` comments are skipped.
pub fn parse_game_lines(text: &str) -> Result<Vec<GameId>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_game)
        .collect()
}

pub fn format_game(g: GameId) -> String {
    let mut out = String::new();
    write_game(&mut out, g);
    out
}

fn write_game(out: &mut String, g: GameId) {
    if g.is_leaf() {
        let _ = write!(out, "{}", g.score());
        return;
    }
    out.push('{');
    write_options(out, g.left());
    let _ = write!(out, "|{}|", g.score());
    write_options(out, g.right());
    out.push('}');
}

fn write_options(out: &mut String, opts: &[GameId]) {
    if opts.is_empty() {
        out.push('.');
    }
    for (k, o) in opts.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        write_game(out, *o);
    }
}

/// Indented multi-line rendering, one node per line.
pub fn format_tree(g: GameId) -> String {
    fn go(out: &mut String, g: GameId, depth: usize, tag: &str) {
        let _ = writeln!(out, "{:indent$}{tag}{}", "", g.score(), indent = depth * 2);
        for l in g.left() {
            go(out, *l, depth + 1, "L ");
        }
        for r in g.right() {
            go(out, *r, depth + 1, "R ");
        }
    }
    let mut out = String::new();
    go(&mut out, g, 0, "");
    out
}

pub fn parse_octal(text: &str) -> Result<OctalRuleset> {
    let t = text.trim();
    let (digit_part, point_part) = match t.split_once(':') {
        Some((d, p)) => (d.trim(), Some(p.trim())),
        None => (t, None),
    };
    let digit_part = digit_part
        .strip_prefix("0.")
        .or_else(|| digit_part.strip_prefix('.'))
        .unwrap_or(digit_part);
    if digit_part.is_empty() {
        return Err(Error::BadRuleset(text.to_string()));
    }
    let mut digits = Vec::with_capacity(digit_part.len());
    for c in digit_part.chars() {
        match c.to_digit(10) {
            Some(d) if d <= 7 => digits.push(d as u8),
            Some(_) => return Err(Error::DigitOutOfRange(c)),
            None => return Err(Error::BadRuleset(text.to_string())),
        }
    }
    match point_part {
        None => OctalRuleset::with_default_points(digits),
        Some(p) => {
            let points = p
                .split(',')
                .map(|s| s.trim().parse::<Score>())
                .collect::<Result<Vec<_>>>()?;
            OctalRuleset::new(digits, points)
        }
    }
}

pub fn format_octal(rules: &OctalRuleset) -> String {
    let digits: String = rules.digits().iter().map(|d| char::from(b'0' + d)).collect();
    let points: Vec<String> = rules.points().iter().map(|p| p.to_string()).collect();
    format!("0.{digits}:{}", points.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{make_game, number};

    fn n(k: i64) -> GameId {
        number(Score::integer(k))
    }

    #[test]
    fn brace_basics() {
        let g = parse_game("{0|1|2}").unwrap();
        assert_eq!(g, make_game(&[n(0)], Score::integer(1), &[n(2)]).unwrap());
        assert_eq!(parse_game("{.|5|.}").unwrap(), parse_game("5").unwrap());
        assert_eq!(format_game(parse_game("{ .|5|. }").unwrap()), "5");
        assert_eq!(format_game(n(0)), "0");
    }

    #[test]
    fn sequential_join_example_game() {
        let g = parse_game("{1,{0|0|0}|0|{0|0|0},-1}").unwrap();
        let inner = parse_game("{0|0|0}").unwrap();
        assert_eq!(g.left().len(), 2);
        assert!(g.left().contains(&n(1)) && g.left().contains(&inner));
        assert!(g.right().contains(&n(-1)) && g.right().contains(&inner));
        assert_eq!(format_game(g), "{1,{0|0|0}|0|-1,{0|0|0}}");
    }

    #[test]
    fn nested_example_round_trip() {
        let text = "{{.|b|{.|c|{e|d|f}}}|a|.}"
            .replace('a', "5")
            .replace('b', "-2")
            .replace('c', "3")
            .replace('d', "0")
            .replace('e', "1")
            .replace('f', "-4");
        let g = parse_game(&text).unwrap();
        assert_eq!(format_game(g), text);
        assert_eq!(parse_game(&format_game(g)).unwrap(), g);
    }

    #[test]
    fn rational_leaves() {
        assert_eq!(format_game(parse_game("{2/4|-1/3|.}").unwrap()), "{1/2|-1/3|.}");
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_game("{1|2}"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_game("{|1|2}"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_game("1/0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_game("{1|2|3"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_game("{1|2|3} 4"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_game(""), Err(Error::Syntax { .. })));
        match parse_game("{1|x|2}") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn game_lines() {
        let gs = parse_game_lines("# header\n{4|3|2}\n\n  0  # zero\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[1], n(0));
    }

    #[test]
    fn octal_notation() {
        let r = parse_octal("0.33:1,2").unwrap();
        assert_eq!(r.digits(), &[3, 3]);
        assert_eq!(r.points(), &[Score::integer(1), Score::integer(2)]);

        let r = parse_octal("0.337").unwrap();
        assert_eq!(r.digits(), &[3, 3, 7]);
        assert_eq!(r.points(), &[Score::integer(1), Score::integer(2), Score::ZERO]);

        assert_eq!(parse_octal("0.39:1,2"), Err(Error::DigitOutOfRange('9')));
        assert!(matches!(
            parse_octal("0.33:1"),
            Err(Error::PointCountMismatch { .. })
        ));
        assert_eq!(parse_octal("0.00:1,1"), Err(Error::EmptyRuleset));
        assert_eq!(format_octal(&parse_octal(".007:0,0,1").unwrap()), "0.007:0,0,1");
    }
}
