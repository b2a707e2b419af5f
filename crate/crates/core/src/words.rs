//! Free-group words, surface presentations, and twisting homomorphisms onto
//! free abelian groups, together with the Fox derivatives that turn relators
//! into boundary matrices over the group ring.

use std::fmt;

use thiserror::Error;

use crate::ring::{Exponents, LaurentPoly, RationalFunction};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unsupported surface (genus {0}, punctures {1})")]
    DomainError(usize, usize),
    #[error("homomorphism does not vanish on relator {0}")]
    InvalidHom(usize),
    #[error("matrix shape inconsistent with {expected} generators")]
    BadMatrix { expected: usize },
}

/// One letter of a word: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

/// A word in a free group, stored as written; free reduction is on demand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(gen: usize) -> Self {
        Word {
            letters: vec![Letter {
                gen,
                inverse: false,
            }],
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter {
                gen: l.gen,
                inverse: !l.inverse,
            })
            .collect();
        Word { letters }
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Word { letters }
    }

    /// `by * self * by^-1`.
    pub fn conjugated_by(&self, by: &Word) -> Word {
        by.concat(self).concat(&by.inverse())
    }

    /// `u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Freely reduced form: no adjacent generator–inverse pairs remain.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&p) if p.gen == l.gen && p.inverse != l.inverse => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn is_identity(&self) -> bool {
        self.reduced().letters.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }
}

/// What space a presentation models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceKind {
    ClosedSurface { genus: usize },
    PuncturedSurface { genus: usize, punctures: usize },
    Circle,
    Wedge,
}

/// A finite presentation of the fundamental group of a surface, circle, or
/// wedge of two circles. The presentation complex of the standard one-relator
/// surface presentation is the closed surface itself, so its cover chain
/// complex computes twisted homology directly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    kind: SpaceKind,
    gen_names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Standard presentation for the closed (`h = 0`) or punctured surface of
    /// genus `g` with `h` punctures. Closed: generators `a1, b1, …, ag, bg`
    /// and the single relator `[a1,b1]…[ag,bg]`. Punctured: a free group on
    /// `2g + h - 1` generators `a1, b1, …, c1, …, c(h-1)`.
    pub fn surface(genus: usize, punctures: usize) -> Result<Self, WordError> {
        if genus == 0 && punctures <= 1 {
            return Err(WordError::DomainError(genus, punctures));
        }
        let mut gen_names = Vec::new();
        for i in 1..=genus {
            gen_names.push(format!("a{i}"));
            gen_names.push(format!("b{i}"));
        }
        if punctures == 0 {
            let mut relator = Word::identity();
            for i in 0..genus {
                let a = Word::generator(2 * i);
                let b = Word::generator(2 * i + 1);
                relator = relator.concat(&Word::commutator(&a, &b));
            }
            Ok(Presentation {
                kind: SpaceKind::ClosedSurface { genus },
                gen_names,
                relators: vec![relator],
            })
        } else {
            for i in 1..punctures {
                gen_names.push(format!("c{i}"));
            }
            Ok(Presentation {
                kind: SpaceKind::PuncturedSurface { genus, punctures },
                gen_names,
                relators: vec![],
            })
        }
    }

    pub fn circle() -> Self {
        Presentation {
            kind: SpaceKind::Circle,
            gen_names: vec!["x1".to_string()],
            relators: vec![],
        }
    }

    pub fn wedge() -> Self {
        Presentation {
            kind: SpaceKind::Wedge,
            gen_names: vec!["x1".to_string(), "x2".to_string()],
            relators: vec![],
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn generator_count(&self) -> usize {
        self.gen_names.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gen_names.iter().position(|n| n == name)
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// `1 - m + k` for the presentation complex with one 0-cell, `m` 1-cells
    /// and `k` 2-cells.
    pub fn euler_characteristic(&self) -> i64 {
        1 - self.gen_names.len() as i64 + self.relators.len() as i64
    }

    /// Parse a word over this presentation's generators. Tokens are generator
    /// names with optional `^k` powers, `[u,v]` commutators, parentheses, and
    /// `1` for the identity; whitespace and `*` separate factors. The result
    /// is freely reduced.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut p = WordParser {
            text: text.as_bytes(),
            pos: 0,
            names: &self.gen_names,
        };
        let w = p.word(0)?;
        p.skip_ws();
        if p.pos != p.text.len() {
            return Err(p.err("trailing input"));
        }
        Ok(w.reduced())
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|l| {
                let name = &self.gen_names[l.gen];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

struct WordParser<'a> {
    text: &'a [u8],
    pos: usize,
    names: &'a [String],
}

impl<'a> WordParser<'a> {
    fn err(&self, msg: impl Into<String>) -> WordError {
        WordError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_whitespace() || self.text[self.pos] == b'*')
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    /// Parse a sequence of factors, stopping at `,`, `]`, `)` or end of input.
    fn word(&mut self, depth: usize) -> Result<Word, WordError> {
        if depth > 64 {
            return Err(self.err("nesting too deep"));
        }
        let mut acc = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b',') | Some(b']') | Some(b')') => return Ok(acc),
                _ => {}
            }
            let atom = self.atom(depth)?;
            let exp = self.power()?;
            acc = acc.concat(&atom.pow(exp));
        }
    }

    fn atom(&mut self, depth: usize) -> Result<Word, WordError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let u = self.word(depth + 1)?;
                if self.peek() != Some(b',') {
                    return Err(self.err("expected ',' in commutator"));
                }
                self.pos += 1;
                let v = self.word(depth + 1)?;
                if self.peek() != Some(b']') {
                    return Err(self.err("expected ']' to close commutator"));
                }
                self.pos += 1;
                Ok(Word::commutator(&u, &v))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word(depth + 1)?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(w)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.text.len() && self.text[self.pos].is_ascii_lowercase() {
                    self.pos += 1;
                }
                while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                match self.names.iter().position(|n| n == name) {
                    Some(idx) => Ok(Word::generator(idx)),
                    None => Err(WordError::Parse {
                        pos: start,
                        msg: format!("unknown generator {name:?}"),
                    }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected character {:?}", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn power(&mut self) -> Result<i64, WordError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer exponent after ^"));
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        let v: i64 = s.parse().map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }
}

/// A homomorphism from the presented group onto a free abelian group of a
/// fixed rank, stored as an integer matrix whose column `j` is the image of
/// generator `j` in additive notation. Determines the abelian cover whose
/// chain complex the homology module builds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    rank: usize,
    cols: Vec<Vec<i64>>,
}

impl Twist {
    /// The abelianization map modulo torsion: the identity matrix. For the
    /// closed genus-g surface this is the maximal free-abelian cover.
    pub fn hurewicz(p: &Presentation) -> Twist {
        let m = p.generator_count();
        let cols = (0..m)
            .map(|j| {
                let mut c = vec![0i64; m];
                c[j] = 1;
                c
            })
            .collect();
        Twist { rank: m, cols }
    }

    /// The zero homomorphism onto a lattice of the given rank.
    pub fn trivial(p: &Presentation, rank: usize) -> Twist {
        Twist {
            rank,
            cols: vec![vec![0; rank]; p.generator_count()],
        }
    }

    /// Build from an `n x m` row-major matrix, checking that every relator of
    /// the presentation maps to zero.
    pub fn from_matrix(p: &Presentation, rows: Vec<Vec<i64>>) -> Result<Twist, WordError> {
        let m = p.generator_count();
        let n = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(WordError::BadMatrix { expected: m });
        }
        let cols = (0..m)
            .map(|j| (0..n).map(|i| rows[i][j]).collect())
            .collect();
        let t = Twist { rank: n, cols };
        for (i, r) in p.relators().iter().enumerate() {
            if !t.kills(r) {
                return Err(WordError::InvalidHom(i));
            }
        }
        Ok(t)
    }

    /// Compose with an inclusion of lattices: the new matrix is
    /// `inclusion * self` where `inclusion` is `n x n'` row-major.
    pub fn composed_with(&self, inclusion: &[Vec<i64>]) -> Twist {
        let n = inclusion.len();
        assert!(
            inclusion.iter().all(|r| r.len() == self.rank),
            "inclusion shape mismatch"
        );
        let cols = self
            .cols
            .iter()
            .map(|col| {
                (0..n)
                    .map(|i| inclusion[i].iter().zip(col).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        Twist { rank: n, cols }
    }

    /// Rank of the target lattice.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_count(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[i64] {
        &self.cols[j]
    }

    /// Row-major `n x m` matrix.
    pub fn matrix_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| self.cols.iter().map(|c| c[i]).collect())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|&v| v == 0))
    }

    /// Image of a word in the target lattice; additive in concatenation.
    pub fn of_word(&self, w: &Word) -> Vec<i64> {
        let mut acc = vec![0i64; self.rank];
        for l in w.letters() {
            let col = &self.cols[l.gen];
            if l.inverse {
                for (a, b) in acc.iter_mut().zip(col) {
                    *a -= b;
                }
            } else {
                for (a, b) in acc.iter_mut().zip(col) {
                    *a += b;
                }
            }
        }
        acc
    }

    pub fn kills(&self, w: &Word) -> bool {
        self.of_word(w).iter().all(|&v| v == 0)
    }

    /// The Laurent monomial `z^{of_word(w)}`.
    pub fn monomial(&self, w: &Word) -> LaurentPoly {
        LaurentPoly::monomial(
            self.rank,
            Exponents(self.of_word(w)),
            num_rational::BigRational::from_integer(1.into()),
        )
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.matrix_rows() {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

/// The image under the twist of the Fox derivative of `w` with respect to
/// generator `gen`, following the product rule `d(uv) = du + u dv` with
/// `dx/dx = 1`, `dy/dx = 0`, and `d(x^-1)/dx = -x^-1`.
pub fn fox_derivative(w: &Word, gen: usize, twist: &Twist) -> RationalFunction {
    let n = twist.rank();
    let one = num_rational::BigRational::from_integer(1.into());
    let minus_one = -one.clone();
    let mut acc = LaurentPoly::zero(n);
    let mut prefix = vec![0i64; n];
    for l in w.letters() {
        let col = twist.column(l.gen);
        if !l.inverse {
            if l.gen == gen {
                acc = &acc + &LaurentPoly::monomial(n, Exponents(prefix.clone()), one.clone());
            }
            for (p, c) in prefix.iter_mut().zip(col) {
                *p += c;
            }
        } else {
            for (p, c) in prefix.iter_mut().zip(col) {
                *p -= c;
            }
            if l.gen == gen {
                acc =
                    &acc + &LaurentPoly::monomial(n, Exponents(prefix.clone()), minus_one.clone());
            }
        }
    }
    RationalFunction::from_poly(acc)
}
