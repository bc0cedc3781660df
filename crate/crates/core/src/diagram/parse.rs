//! PD text grammar:
//!
//! ```text
//! pd       := "PD" "[" [ crossing { "," crossing } ] "]"
//! crossing := "X" ( "[" | "(" ) int "," int "," int "," int ( "]" | ")" )
//! ```
//!
//! Whitespace is allowed between tokens; labels are positive integers.

use alloc::vec::Vec;

use super::{DiagramError, PlanarDiagram};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &'static str) -> DiagramError {
        DiagramError::Syntax { pos: self.pos, msg }
    }

    fn expect(&mut self, c: u8, msg: &'static str) -> Result<(), DiagramError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(msg))
        }
    }

    fn expect_one_of(&mut self, cs: &[u8], msg: &'static str) -> Result<u8, DiagramError> {
        match self.peek() {
            Some(c) if cs.contains(&c) => {
                self.pos += 1;
                Ok(c)
            }
            _ => Err(self.err(msg)),
        }
    }

    fn int(&mut self) -> Result<u32, DiagramError> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u32 = 0;
        while let Some(d) = self.s.get(self.pos).filter(|c| c.is_ascii_digit()) {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as u32))
                .ok_or(DiagramError::Syntax { pos: start, msg: "label too large" })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an arc label"));
        }
        Ok(v)
    }
}

/// Parses and validates PD notation such as `PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]`.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    c.expect(b'P', "expected PD[")?;
    if c.s.get(c.pos) != Some(&b'D') {
        return Err(c.err("expected PD["));
    }
    c.pos += 1;
    c.expect(b'[', "expected [ after PD")?;
    let mut crossings = Vec::new();
    if c.peek() == Some(b']') {
        c.pos += 1;
    } else {
        loop {
            c.expect(b'X', "expected X")?;
            let open = c.expect_one_of(b"[(", "expected ( or [ after X")?;
            let mut x = [0u32; 4];
            for (n, slot) in x.iter_mut().enumerate() {
                if n > 0 {
                    c.expect(b',', "expected ,")?;
                }
                *slot = c.int()?;
            }
            let close = if open == b'(' { b')' } else { b']' };
            c.expect(close, "unbalanced crossing bracket")?;
            crossings.push(x);
            match c.expect_one_of(b",]", "expected , or ]")? {
                b',' => continue,
                _ => break,
            }
        }
    }
    c.skip_ws();
    if c.pos != c.s.len() {
        return Err(c.err("trailing characters"));
    }
    PlanarDiagram::new(crossings)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_both_bracket_styles() {
        let a = parse_pd("PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]").unwrap();
        let b = parse_pd(" PD[ X[1,4,2,5],X[3,6,4,1],X[5,2,6,3] ] ").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.crossings()[0], [1, 4, 2, 5]);
    }

    #[test]
    fn reports_position() {
        assert_eq!(
            parse_pd("PD[X(1,4,2 5)]").unwrap_err(),
            DiagramError::Syntax { pos: 11, msg: "expected ," }
        );
        assert!(matches!(parse_pd("PD[X(1,4,2,5]").unwrap_err(), DiagramError::Syntax { .. }));
        assert!(matches!(parse_pd("PD[]x").unwrap_err(), DiagramError::Syntax { .. }));
        assert!(matches!(parse_pd("").unwrap_err(), DiagramError::Syntax { pos: 0, .. }));
    }

    #[test]
    fn round_trips_through_text() {
        let d = parse_pd("PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap();
        assert_eq!(parse_pd(&d.to_pd_string()).unwrap(), d);
    }
}
