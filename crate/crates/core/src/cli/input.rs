//! Line-oriented input documents with named blocks.
//!
//! ```text
//! group S3 {
//!   permutations 3
//!   generator 1 0 2
//!   generator 1 2 0
//! }
//! pair P { T C2  N C3 ... }
//! ```
//!
//! A statement runs to the end of its line or to a closing brace; `#` starts a comment.

use crate::fingroup::{FiniteGroup, GroupError, GroupMatchedPair};
use crate::liecohomology::{sl_conjugation, LieAlgebraData, LieError, LieGroupAction, LieSide};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::str::FromStr;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{line}:{column}: block `{block}`: {message}")]
    Validation { line: usize, column: usize, block: String, code: &'static str, message: String, witness: Vec<usize> },
}

impl InputError {
    pub fn code(&self) -> &'static str {
        match self {
            InputError::Parse { .. } => "ParseError",
            InputError::Validation { code, .. } => code,
        }
    }

    pub fn position(&self) -> Pos {
        match self {
            InputError::Parse { line, column, .. } | InputError::Validation { line, column, .. } => {
                Pos { line: *line, column: *column }
            }
        }
    }

    pub fn witness(&self) -> &[usize] {
        match self {
            InputError::Validation { witness, .. } => witness,
            InputError::Parse { .. } => &[],
        }
    }
}

fn parse_err(pos: Pos, message: impl Into<String>) -> InputError {
    InputError::Parse { line: pos.line, column: pos.column, message: message.into() }
}

#[derive(Clone, Debug)]
struct Token {
    text: String,
    pos: Pos,
}

#[derive(Clone, Debug)]
struct Statement {
    words: Vec<Token>,
}

impl Statement {
    fn head(&self) -> &str {
        &self.words[0].text
    }

    fn pos(&self) -> Pos {
        self.words[0].pos
    }

    fn args(&self) -> &[Token] {
        &self.words[1..]
    }

    fn nums<T: FromStr>(&self) -> Result<Vec<T>, InputError> {
        self.args().iter().map(|t| number(t)).collect()
    }

    fn one<T: FromStr>(&self) -> Result<T, InputError> {
        match self.args() {
            [t] => number(t),
            _ => Err(parse_err(self.pos(), format!("`{}` takes exactly one argument", self.head()))),
        }
    }

    fn name(&self) -> Result<String, InputError> {
        match self.args() {
            [t] => Ok(t.text.clone()),
            _ => Err(parse_err(self.pos(), format!("`{}` takes exactly one name", self.head()))),
        }
    }
}

fn number<T: FromStr>(t: &Token) -> Result<T, InputError> {
    t.text.parse().map_err(|_| parse_err(t.pos, format!("`{}` is not a valid number", t.text)))
}

#[derive(Clone, Debug)]
struct RawBlock {
    kind: String,
    name: String,
    pos: Pos,
    statements: Vec<Statement>,
}

fn tokenize(src: &str) -> Vec<Vec<Token>> {
    let mut lines = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut cur = String::new();
        let mut start = 0;
        for (i, ch) in line.char_indices() {
            let col = line[..i].chars().count() + 1;
            if ch.is_whitespace() || ch == '{' || ch == '}' {
                if !cur.is_empty() {
                    toks.push(Token { text: std::mem::take(&mut cur), pos: Pos { line: ln + 1, column: start } });
                }
                if ch != ' ' && ch != '\t' && !ch.is_whitespace() {
                    toks.push(Token { text: ch.to_string(), pos: Pos { line: ln + 1, column: col } });
                }
            } else {
                if cur.is_empty() {
                    start = col;
                }
                cur.push(ch);
            }
        }
        if !cur.is_empty() {
            toks.push(Token { text: cur, pos: Pos { line: ln + 1, column: start } });
        }
        lines.push(toks);
    }
    lines
}

fn parse_blocks(src: &str) -> Result<Vec<RawBlock>, InputError> {
    let mut blocks = Vec::new();
    let mut current: Option<RawBlock> = None;
    let mut stmt: Vec<Token> = Vec::new();
    let mut last = Pos { line: 1, column: 1 };
    for line in tokenize(src) {
        let mut i = 0;
        while i < line.len() {
            let tok = &line[i];
            last = tok.pos;
            match (&mut current, tok.text.as_str()) {
                (None, "{") | (None, "}") => return Err(parse_err(tok.pos, format!("unexpected `{}`", tok.text))),
                (None, _) => {
                    // KIND [NAME] {
                    let kind = tok.clone();
                    let mut j = i + 1;
                    let mut name = String::new();
                    if j < line.len() && line[j].text != "{" {
                        name = line[j].text.clone();
                        j += 1;
                    }
                    if j >= line.len() || line[j].text != "{" {
                        return Err(parse_err(kind.pos, format!("expected `{{` after block header `{}`", kind.text)));
                    }
                    if name.is_empty() && kind.text != "task" {
                        return Err(parse_err(kind.pos, format!("block `{}` needs a name", kind.text)));
                    }
                    current = Some(RawBlock { kind: kind.text, name, pos: kind.pos, statements: Vec::new() });
                    i = j + 1;
                    continue;
                }
                (Some(_), "{") => return Err(parse_err(tok.pos, "nested blocks are not allowed")),
                (Some(b), "}") => {
                    if !stmt.is_empty() {
                        b.statements.push(Statement { words: std::mem::take(&mut stmt) });
                    }
                    blocks.push(current.take().expect("open block"));
                }
                (Some(_), _) => stmt.push(tok.clone()),
            }
            i += 1;
        }
        if let Some(b) = &mut current {
            if !stmt.is_empty() {
                b.statements.push(Statement { words: std::mem::take(&mut stmt) });
            }
        }
    }
    if let Some(b) = current {
        return Err(parse_err(last, format!("block `{}` starting at line {} is not closed", b.name, b.pos.line)));
    }
    Ok(blocks)
}

/// Defaults supplied by a `task { … }` block.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TaskDirectives {
    pub target: Option<String>,
    pub modulus: Option<u64>,
    pub max_degree: Option<usize>,
    pub bound: Option<(usize, usize)>,
    pub convention: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Method6Spec {
    pub pair: String,
    pub lie: String,
    pub side: LieSide,
    pub action_t: String,
    pub action_n: String,
}

#[derive(Clone, Debug)]
pub struct LieActionSpec {
    pub lie: String,
    pub action: LieGroupAction,
}

/// A parsed and validated document. Names are unique across all block kinds.
#[derive(Clone, Debug, Default)]
pub struct InputDocument {
    pub groups: BTreeMap<String, FiniteGroup>,
    /// matched pairs, including those cut out by `factorization` blocks
    pub pairs: BTreeMap<String, GroupMatchedPair>,
    pub lies: BTreeMap<String, LieAlgebraData>,
    pub actions: BTreeMap<String, LieActionSpec>,
    pub method6: BTreeMap<String, Method6Spec>,
    pub task: TaskDirectives,
    /// element permutations of groups given by `permutations`
    perm_labels: BTreeMap<String, Vec<Vec<usize>>>,
    /// (kind, name) in document order
    pub order: Vec<(String, String)>,
}

fn group_err(b: &RawBlock, pos: Pos, e: GroupError) -> InputError {
    InputError::Validation {
        line: pos.line,
        column: pos.column,
        block: b.name.clone(),
        code: e.code(),
        witness: e.witness(),
        message: e.to_string(),
    }
}

fn lie_err(b: &RawBlock, e: LieError) -> InputError {
    let code = match &e {
        LieError::Bar(_) => "BarError",
        LieError::IndexOutOfRange(..) => "IndexOutOfRange",
        LieError::NotAntisymmetric(..) => "NotAntisymmetric",
        LieError::JacobiViolated(..) => "JacobiViolated",
        LieError::NotAutomorphism(_) => "NotAutomorphism",
        LieError::NotRepresentation(_) => "NotRepresentation",
        LieError::ActionsIncompatible(_) => "ActionsIncompatible",
        LieError::DegreeOutOfRange(_) => "DegreeOutOfRange",
    };
    let witness = match e {
        LieError::JacobiViolated(i, j, k) | LieError::IndexOutOfRange(i, j, k) => vec![i, j, k],
        LieError::NotAntisymmetric(i, j) => vec![i, j],
        LieError::NotAutomorphism(g) => vec![g],
        _ => Vec::new(),
    };
    InputError::Validation {
        line: b.pos.line,
        column: b.pos.column,
        block: b.name.clone(),
        code,
        witness,
        message: e.to_string(),
    }
}

fn invalid(b: &RawBlock, pos: Pos, message: impl Into<String>) -> InputError {
    InputError::Validation {
        line: pos.line,
        column: pos.column,
        block: b.name.clone(),
        code: "InvalidBlock",
        witness: Vec::new(),
        message: message.into(),
    }
}

impl InputDocument {
    pub fn parse(src: &str) -> Result<Self, InputError> {
        let mut doc = InputDocument::default();
        for b in parse_blocks(src)? {
            if b.kind != "task" && doc.order.iter().any(|(_, n)| *n == b.name) {
                return Err(parse_err(b.pos, format!("name `{}` is defined twice", b.name)));
            }
            match b.kind.as_str() {
                "group" => {
                    let (g, labels) = doc.build_group(&b)?;
                    if let Some(l) = labels {
                        doc.perm_labels.insert(b.name.clone(), l);
                    }
                    doc.groups.insert(b.name.clone(), g);
                }
                "pair" => {
                    let p = doc.build_pair(&b)?;
                    doc.pairs.insert(b.name.clone(), p);
                }
                "factorization" => {
                    let p = doc.build_factorization(&b)?;
                    doc.pairs.insert(b.name.clone(), p);
                }
                "lie" => {
                    let g = build_lie(&b)?;
                    doc.lies.insert(b.name.clone(), g);
                }
                "lie-action" => {
                    let a = doc.build_action(&b)?;
                    doc.actions.insert(b.name.clone(), a);
                }
                "method6" => {
                    let m = doc.build_method6(&b)?;
                    doc.method6.insert(b.name.clone(), m);
                }
                "task" => doc.task = build_task(&b)?,
                other => return Err(parse_err(b.pos, format!("unknown block kind `{other}`"))),
            }
            doc.order.push((b.kind.clone(), b.name.clone()));
        }
        Ok(doc)
    }

    fn group_ref(&self, b: &RawBlock, s: &Statement) -> Result<FiniteGroup, InputError> {
        let name = s.name()?;
        self.groups.get(&name).cloned().ok_or_else(|| invalid(b, s.words[1].pos, format!("unknown group `{name}`")))
    }

    fn build_group(&self, b: &RawBlock) -> Result<(FiniteGroup, Option<Vec<Vec<usize>>>), InputError> {
        let Some(first) = b.statements.first() else {
            return Err(invalid(b, b.pos, "empty group block"));
        };
        let rest = &b.statements[1..];
        let only = |kind: &str| -> Result<(), InputError> {
            match rest.iter().find(|s| s.head() != kind) {
                Some(s) => Err(parse_err(s.pos(), format!("unexpected `{}` in group block", s.head()))),
                None => Ok(()),
            }
        };
        let small = |s: &Statement| -> Result<usize, InputError> {
            let n: usize = s.one()?;
            if n == 0 || n > 720 {
                return Err(invalid(b, s.pos(), format!("order parameter {n} out of range 1..=720")));
            }
            Ok(n)
        };
        match first.head() {
            "cyclic" => {
                only("")?;
                Ok((FiniteGroup::cyclic(small(first)?), None))
            }
            "symmetric" => {
                only("")?;
                let n = small(first)?;
                if n > 6 {
                    return Err(invalid(b, first.pos(), "symmetric groups above degree 6 are not supported"));
                }
                Ok((FiniteGroup::symmetric(n), None))
            }
            "dihedral" => {
                only("")?;
                Ok((FiniteGroup::dihedral(small(first)?), None))
            }
            "permutations" => {
                only("generator")?;
                let degree: usize = first.one()?;
                let gens = rest.iter().map(|s| s.nums::<usize>()).collect::<Result<Vec<_>, _>>()?;
                FiniteGroup::from_permutations(degree, &gens).map(|(g, l)| (g, Some(l))).map_err(|e| group_err(b, first.pos(), e))
            }
            "order" => {
                only("row")?;
                let n: usize = first.one()?;
                let rows = rest.iter().map(|s| s.nums::<usize>()).collect::<Result<Vec<_>, _>>()?;
                if rows.len() != n {
                    return Err(invalid(b, first.pos(), format!("{} rows given for order {n}", rows.len())));
                }
                FiniteGroup::from_table(&rows).map(|g| (g, None)).map_err(|e| group_err(b, first.pos(), e))
            }
            other => Err(parse_err(first.pos(), format!("unknown group description `{other}`"))),
        }
    }

    fn build_pair(&self, b: &RawBlock) -> Result<GroupMatchedPair, InputError> {
        let (mut t, mut n) = (None, None);
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for s in &b.statements {
            match s.head() {
                "T" => t = Some(self.group_ref(b, s)?),
                "N" => n = Some(self.group_ref(b, s)?),
                "left" => left.push(s.nums::<usize>()?),
                "right" => right.push(s.nums::<usize>()?),
                other => return Err(parse_err(s.pos(), format!("unexpected `{other}` in pair block"))),
            }
        }
        let (Some(t), Some(n)) = (t, n) else {
            return Err(invalid(b, b.pos, "pair needs both `T` and `N`"));
        };
        if left.is_empty() {
            left = (0..t.order()).map(|_| (0..n.order()).collect()).collect();
        }
        if right.is_empty() {
            right = (0..t.order()).map(|ti| vec![ti; n.order()]).collect();
        }
        GroupMatchedPair::new(t, n, &left, &right).map_err(|e| group_err(b, b.pos, e))
    }

    fn build_factorization(&self, b: &RawBlock) -> Result<GroupMatchedPair, InputError> {
        let mut ambient = None;
        let mut ambient_name = String::new();
        let mut n_gens: Vec<(Pos, Vec<usize>)> = Vec::new();
        let mut t_gens: Vec<(Pos, Vec<usize>)> = Vec::new();
        let mut perms: Option<Vec<Vec<usize>>> = None;
        let mut n_listed: Option<Vec<usize>> = None;
        let mut t_listed: Option<Vec<usize>> = None;
        for s in &b.statements {
            match s.head() {
                "group" => {
                    let name = s.name()?;
                    let g = self.groups.get(&name).ok_or_else(|| invalid(b, s.pos(), format!("unknown group `{name}`")))?;
                    ambient = Some(g.clone());
                    ambient_name = name;
                }
                "N" | "T" => {
                    let args = s.args();
                    let by_perm = args.first().is_some_and(|t| t.text == "perm");
                    let target_gens = if s.head() == "N" { &mut n_gens } else { &mut t_gens };
                    if by_perm {
                        let p = args[1..].iter().map(number).collect::<Result<Vec<usize>, _>>()?;
                        target_gens.push((s.pos(), p));
                    } else {
                        let elems = s.nums::<usize>()?;
                        if s.head() == "N" {
                            n_listed = Some(elems);
                        } else {
                            t_listed = Some(elems);
                        }
                    }
                }
                other => return Err(parse_err(s.pos(), format!("unexpected `{other}` in factorization block"))),
            }
        }
        let Some(f) = ambient else {
            return Err(invalid(b, b.pos, "factorization needs `group`"));
        };
        if !n_gens.is_empty() || !t_gens.is_empty() {
            perms = Some(self.permutation_labels(b, &ambient_name)?);
        }
        let resolve = |listed: Option<Vec<usize>>, gens: &[(Pos, Vec<usize>)]| -> Result<Vec<usize>, InputError> {
            if let Some(l) = listed {
                if let Some(&bad) = l.iter().find(|&&x| x >= f.order()) {
                    return Err(invalid(b, b.pos, format!("element {bad} is not in the group")));
                }
                return Ok(l);
            }
            let perms = perms.as_ref().expect("permutation labels");
            let mut elems = Vec::new();
            for (pos, p) in gens {
                let idx = perms.iter().position(|q| q == p).ok_or_else(|| invalid(b, *pos, "permutation is not in the group"))?;
                elems.push(idx);
            }
            Ok(closure(&f, &elems))
        };
        let n_elems = resolve(n_listed, &n_gens)?;
        let t_elems = resolve(t_listed, &t_gens)?;
        GroupMatchedPair::from_exact_factorization(&f, &n_elems, &t_elems).map(|(p, _)| p).map_err(|e| group_err(b, b.pos, e))
    }

    /// Regenerates the permutation of each element for a group given by `permutations`.
    fn permutation_labels(&self, b: &RawBlock, group: &str) -> Result<Vec<Vec<usize>>, InputError> {
        let Some(labels) = self.perm_labels.get(group) else {
            return Err(invalid(b, b.pos, "`perm` generators need a group given by `permutations`"));
        };
        Ok(labels.clone())
    }

    fn build_action(&self, b: &RawBlock) -> Result<LieActionSpec, InputError> {
        let mut lie_name = None;
        let mut group = None;
        let mut gens: Vec<(usize, bool, Vec<Vec<BigRational>>, Pos)> = Vec::new();
        for s in &b.statements {
            match s.head() {
                "lie" => lie_name = Some(s.name()?),
                "group" => group = Some(self.group_ref(b, s)?),
                "element" => {
                    let args = s.args();
                    let conj = args.get(1).is_some_and(|t| t.text == "conjugate");
                    if args.is_empty() || args.len() > 2 || (args.len() == 2 && !conj) {
                        return Err(parse_err(s.pos(), "expected `element K` or `element K conjugate`"));
                    }
                    gens.push((number(&args[0])?, conj, Vec::new(), s.pos()));
                }
                "row" => {
                    let Some(last) = gens.last_mut() else {
                        return Err(parse_err(s.pos(), "`row` before any `element`"));
                    };
                    let row = s.args().iter().map(rational).collect::<Result<Vec<_>, _>>()?;
                    last.2.push(row);
                }
                other => return Err(parse_err(s.pos(), format!("unexpected `{other}` in lie-action block"))),
            }
        }
        let lie_name = lie_name.ok_or_else(|| invalid(b, b.pos, "lie-action needs `lie`"))?;
        let lie = self.lies.get(&lie_name).ok_or_else(|| invalid(b, b.pos, format!("unknown lie algebra `{lie_name}`")))?;
        let group = group.ok_or_else(|| invalid(b, b.pos, "lie-action needs `group`"))?;
        let mut mats = Vec::new();
        for (k, conj, rows, pos) in gens {
            let size = rows.len();
            if rows.iter().any(|r| r.len() != size) {
                return Err(invalid(b, pos, "matrix rows must form a square matrix"));
            }
            let mut m = crate::exactlin::RationalMatrix::zeros(size, size);
            for (i, r) in rows.into_iter().enumerate() {
                for (j, v) in r.into_iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            let m = if conj {
                if m.inverse().is_none() || size * size - 1 != lie.dim() {
                    return Err(invalid(b, pos, "conjugating matrix must be invertible of size n with n² − 1 = dim"));
                }
                sl_conjugation(&m)
            } else {
                if size != lie.dim() {
                    return Err(invalid(b, pos, format!("matrix has size {size}, algebra has dimension {}", lie.dim())));
                }
                m
            };
            mats.push((k, m));
        }
        let action = LieGroupAction::from_generators(lie, group, &mats).map_err(|e| lie_err(b, e))?;
        Ok(LieActionSpec { lie: lie_name, action })
    }

    fn build_method6(&self, b: &RawBlock) -> Result<Method6Spec, InputError> {
        let mut fields: BTreeMap<&str, (String, Pos)> = BTreeMap::new();
        for s in &b.statements {
            let key = match s.head() {
                "pair" => "pair",
                "lie" => "lie",
                "lie-side" => "lie-side",
                "action-t" => "action-t",
                "action-n" => "action-n",
                other => return Err(parse_err(s.pos(), format!("unexpected `{other}` in method6 block"))),
            };
            fields.insert(key, (s.name()?, s.pos()));
        }
        let get = |k: &str| fields.get(k).cloned().ok_or_else(|| invalid(b, b.pos, format!("method6 needs `{k}`")));
        let (pair, pp) = get("pair")?;
        let (lie, lp) = get("lie")?;
        let (side, sp) = get("lie-side")?;
        let (at, ap) = get("action-t")?;
        let (an, np) = get("action-n")?;
        if !self.pairs.contains_key(&pair) {
            return Err(invalid(b, pp, format!("unknown pair `{pair}`")));
        }
        if !self.lies.contains_key(&lie) {
            return Err(invalid(b, lp, format!("unknown lie algebra `{lie}`")));
        }
        for (a, p) in [(&at, ap), (&an, np)] {
            match self.actions.get(a) {
                None => return Err(invalid(b, p, format!("unknown lie-action `{a}`"))),
                Some(existing) if existing.lie != lie => {
                    return Err(invalid(b, p, format!("lie-action `{a}` acts on `{}`, not `{lie}`", existing.lie)))
                }
                _ => {}
            }
        }
        let side = match side.as_str() {
            "T" => LieSide::T,
            "N" => LieSide::N,
            other => return Err(parse_err(sp, format!("lie-side must be T or N, got `{other}`"))),
        };
        Ok(Method6Spec { pair, lie, side, action_t: at, action_n: an })
    }
}

/// The subgroup generated by `gens`.
fn closure(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut elems = vec![g.identity()];
    let mut i = 0;
    while i < elems.len() {
        for &s in gens {
            let x = g.mul(elems[i], s);
            if !elems.contains(&x) {
                elems.push(x);
            }
        }
        i += 1;
    }
    elems.sort_unstable();
    elems
}

fn rational(t: &Token) -> Result<BigRational, InputError> {
    BigRational::from_str(&t.text).map_err(|_| parse_err(t.pos, format!("`{}` is not a rational number", t.text)))
}

fn build_lie(b: &RawBlock) -> Result<LieAlgebraData, InputError> {
    let mut dim = None;
    let mut entries = Vec::new();
    for s in &b.statements {
        match s.head() {
            "abelian" => return Ok(LieAlgebraData::abelian(s.one()?)),
            "sl" => {
                let n: usize = s.one()?;
                if !(2..=4).contains(&n) {
                    return Err(invalid(b, s.pos(), "sl n is supported for n in 2..=4"));
                }
                return Ok(LieAlgebraData::sl(n));
            }
            "dim" => dim = Some(s.one::<usize>()?),
            "bracket" => {
                let a = s.args();
                if a.len() != 4 {
                    return Err(parse_err(s.pos(), "expected `bracket i j k c`"));
                }
                entries.push((number(&a[0])?, number(&a[1])?, number(&a[2])?, rational(&a[3])?));
            }
            other => return Err(parse_err(s.pos(), format!("unexpected `{other}` in lie block"))),
        }
    }
    let dim = dim.ok_or_else(|| invalid(b, b.pos, "lie block needs `dim`, `abelian n` or `sl n`"))?;
    LieAlgebraData::from_brackets(dim, &entries).map_err(|e| lie_err(b, e))
}

fn build_task(b: &RawBlock) -> Result<TaskDirectives, InputError> {
    let mut t = TaskDirectives::default();
    for s in &b.statements {
        match s.head() {
            "target" => t.target = Some(s.name()?),
            "modulus" => t.modulus = Some(s.one()?),
            "max-degree" => t.max_degree = Some(s.one()?),
            "bound" => match s.nums::<usize>()?.as_slice() {
                [p, q] => t.bound = Some((*p, *q)),
                _ => return Err(parse_err(s.pos(), "expected `bound P Q`")),
            },
            "convention" => t.convention = Some(s.name()?),
            other => return Err(parse_err(s.pos(), format!("unexpected `{other}` in task block"))),
        }
    }
    Ok(t)
}
