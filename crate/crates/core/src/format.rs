//! On-disk documents: one JSON object per value, tagged with `kind` and
//! `version`, holding explicit integer tables.
//!
//! Everything derivable is stored anyway (identities, inverses, both box
//! compositions) and cross-checked on load. Emission is canonical: fixed key
//! order, composition rows sorted, one table row per line, so that
//! `emit(parse(emit(d))) == emit(d)` byte for byte.

use crate::cocycle::{CocyclePair, CocycleSpace};
use crate::double::DoubleGroupoid;
use crate::error::{Error, FormatErrorKind, Result};
use crate::field::FieldSpec;
use crate::groupoid::Groupoid;
use crate::matched_pair::MatchedPair;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use std::collections::BTreeSet;
use std::fmt::Write;

pub const VERSION: &str = "1";

fn fail<T>(kind: FormatErrorKind, message: impl Into<String>) -> Result<T> {
    Err(Error::Format {
        kind,
        message: message.into(),
    })
}

/// `(σ, τ)` as stored: rows `(a, b, value)`. Resolving against a double
/// groupoid checks that each composable pair appears once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTables {
    pub modulus: u64,
    pub sigma: Vec<(usize, usize, u64)>,
    pub tau: Vec<(usize, usize, u64)>,
}

impl CocycleTables {
    pub fn from_pair(t: &DoubleGroupoid, cp: &CocyclePair) -> Result<Self> {
        let space = CocycleSpace::new(t)?;
        Ok(CocycleTables {
            modulus: cp.modulus,
            sigma: space.sigma_entries(cp),
            tau: space.tau_entries(cp),
        })
    }

    pub fn resolve(&self, t: &DoubleGroupoid) -> Result<CocyclePair> {
        let n = t.n_boxes();
        for (name, rows) in [("sigma", &self.sigma), ("tau", &self.tau)] {
            let mut seen = BTreeSet::new();
            for &(a, b, _) in rows {
                if a >= n || b >= n {
                    return fail(FormatErrorKind::Range, format!("{name} entry ({a},{b}) with {n} boxes"));
                }
                if !seen.insert((a, b)) {
                    return fail(FormatErrorKind::Duplicate, format!("{name} entry ({a},{b}) given twice"));
                }
            }
        }
        CocycleSpace::new(t)?.from_entries(self.modulus, &self.sigma, &self.tau)
    }
}

#[derive(Clone, Debug)]
pub enum Document {
    Groupoid(Groupoid),
    DoubleGroupoid(DoubleGroupoid),
    MatchedPair(MatchedPair),
    CocyclePair(CocycleTables),
    FieldSpec(FieldSpec),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Groupoid(_) => "groupoid",
            Document::DoubleGroupoid(_) => "double_groupoid",
            Document::MatchedPair(_) => "matched_pair",
            Document::CocyclePair(_) => "cocycle_pair",
            Document::FieldSpec(_) => "field_spec",
        }
    }
}

// Raw shapes, as read.

#[derive(Deserialize)]
struct Header {
    kind: String,
    version: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupoidTables {
    objects: usize,
    arrows: Vec<[usize; 2]>,
    identities: Vec<usize>,
    inverses: Vec<usize>,
    composition: Vec<[usize; 3]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DoubleDoc {
    #[allow(dead_code)]
    kind: String,
    #[allow(dead_code)]
    version: String,
    horizontal: GroupoidTables,
    vertical: GroupoidTables,
    /// `[top, bottom, left, right]` per box.
    boxes: Vec<[usize; 4]>,
    vertical_identities: Vec<usize>,
    horizontal_identities: Vec<usize>,
    vertical_inverses: Vec<usize>,
    horizontal_inverses: Vec<usize>,
    vertical_composition: Vec<[usize; 3]>,
    horizontal_composition: Vec<[usize; 3]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatchedDoc {
    #[allow(dead_code)]
    kind: String,
    #[allow(dead_code)]
    version: String,
    vertical: GroupoidTables,
    horizontal: GroupoidTables,
    /// `[x, g, x ▷ g, x ◁ g]`.
    actions: Vec<[usize; 4]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CocycleDoc {
    #[allow(dead_code)]
    kind: String,
    #[allow(dead_code)]
    version: String,
    modulus: u64,
    sigma: Vec<(usize, usize, u64)>,
    tau: Vec<(usize, usize, u64)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldDoc {
    #[allow(dead_code)]
    kind: String,
    #[allow(dead_code)]
    version: String,
    characteristic: u64,
    #[serde(default)]
    zeta: Option<u64>,
}

fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).or_else(|e| {
        use serde_json::error::Category;
        let msg = e.to_string();
        let kind = match e.classify() {
            Category::Syntax | Category::Eof | Category::Io => FormatErrorKind::Syntax,
            Category::Data if msg.starts_with("duplicate field") => FormatErrorKind::Duplicate,
            Category::Data => FormatErrorKind::Schema,
        };
        fail(kind, msg)
    })
}

pub fn parse(text: &str) -> Result<Document> {
    let header: Header = from_json(text)?;
    if header.version != VERSION {
        return fail(
            FormatErrorKind::Version,
            format!("version {:?}, expected {VERSION:?}", header.version),
        );
    }
    match header.kind.as_str() {
        "groupoid" => {
            let d: StrictGroupoidDoc = from_json(text)?;
            let tables = GroupoidTables {
                objects: d.objects,
                arrows: d.arrows,
                identities: d.identities,
                inverses: d.inverses,
                composition: d.composition,
            };
            Ok(Document::Groupoid(groupoid_from("groupoid", tables)?))
        }
        "double_groupoid" => Ok(Document::DoubleGroupoid(double_from(from_json(text)?)?)),
        "matched_pair" => {
            let d: MatchedDoc = from_json(text)?;
            let v = groupoid_from("vertical", d.vertical)?;
            let h = groupoid_from("horizontal", d.horizontal)?;
            let (nh, nv) = (h.n_arrows(), v.n_arrows());
            let mut seen = BTreeSet::new();
            for &[x, g, a, b] in &d.actions {
                if x >= nh || g >= nv || a >= nv || b >= nh {
                    return fail(FormatErrorKind::Range, format!("action row [{x},{g},{a},{b}]"));
                }
                if !seen.insert((x, g)) {
                    return fail(FormatErrorKind::Duplicate, format!("action of ({x},{g}) given twice"));
                }
            }
            let rows = d.actions.iter().map(|r| (r[0], r[1], r[2], r[3]));
            Ok(Document::MatchedPair(MatchedPair::from_entries(v, h, rows)?))
        }
        "cocycle_pair" => {
            let d: CocycleDoc = from_json(text)?;
            if d.modulus == 0 {
                return fail(FormatErrorKind::Range, "modulus must be positive");
            }
            if let Some(&(a, b, v)) = d.sigma.iter().chain(&d.tau).find(|r| r.2 >= d.modulus) {
                return fail(FormatErrorKind::Range, format!("value {v} at ({a},{b}) not reduced mod {}", d.modulus));
            }
            Ok(Document::CocyclePair(CocycleTables {
                modulus: d.modulus,
                sigma: d.sigma,
                tau: d.tau,
            }))
        }
        "field_spec" => {
            let d: FieldDoc = from_json(text)?;
            Ok(Document::FieldSpec(FieldSpec {
                characteristic: d.characteristic,
                zeta: d.zeta,
            }))
        }
        other => fail(FormatErrorKind::UnknownKind, format!("unknown kind {other:?}")),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct StrictGroupoidDoc {
    kind: String,
    version: String,
    objects: usize,
    arrows: Vec<[usize; 2]>,
    identities: Vec<usize>,
    inverses: Vec<usize>,
    composition: Vec<[usize; 3]>,
}

fn check_rows(what: &str, rows: &[[usize; 3]], n: usize) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &[f, g, h] in rows {
        if f >= n || g >= n || h >= n {
            return fail(FormatErrorKind::Range, format!("{what} row [{f},{g},{h}] with {n} arrows"));
        }
        if !seen.insert((f, g)) {
            return fail(FormatErrorKind::Duplicate, format!("{what} entry ({f},{g}) given twice"));
        }
    }
    Ok(())
}

fn check_inverses(what: &str, g: &Groupoid, stored: &[usize]) -> Result<()> {
    if stored.len() != g.n_arrows() {
        return fail(FormatErrorKind::Schema, format!("{what}: {} inverses for {} arrows", stored.len(), g.n_arrows()));
    }
    for (f, &i) in stored.iter().enumerate() {
        if i >= g.n_arrows() {
            return fail(FormatErrorKind::Range, format!("{what}: inverse of {f} is {i}"));
        }
        if g.inverse(f) != Some(i) {
            return fail(
                FormatErrorKind::Inconsistent,
                format!("{what}: stored inverse of {f} is {i}, composition gives {:?}", g.inverse(f)),
            );
        }
    }
    Ok(())
}

fn groupoid_from(what: &str, t: GroupoidTables) -> Result<Groupoid> {
    let n = t.arrows.len();
    if let Some((f, a)) = t.arrows.iter().enumerate().find(|(_, a)| a[0] >= t.objects || a[1] >= t.objects) {
        return fail(
            FormatErrorKind::Range,
            format!("{what}: arrow {f} runs {} -> {} with {} objects", a[0], a[1], t.objects),
        );
    }
    if t.identities.len() != t.objects {
        return fail(FormatErrorKind::Schema, format!("{what}: {} identities for {} objects", t.identities.len(), t.objects));
    }
    if let Some(&i) = t.identities.iter().find(|&&i| i >= n) {
        return fail(FormatErrorKind::Range, format!("{what}: identity arrow {i} with {n} arrows"));
    }
    check_rows(what, &t.composition, n)?;
    let g = Groupoid::new(
        t.objects,
        t.arrows.iter().map(|a| a[0]).collect(),
        t.arrows.iter().map(|a| a[1]).collect(),
        t.identities,
        t.composition.iter().map(|r| (r[0], r[1], r[2])),
    )?;
    check_inverses(what, &g, &t.inverses)?;
    Ok(g)
}

fn double_from(d: DoubleDoc) -> Result<DoubleGroupoid> {
    let h = groupoid_from("horizontal", d.horizontal)?;
    let v = groupoid_from("vertical", d.vertical)?;
    let (nh, nv, nb) = (h.n_arrows(), v.n_arrows(), d.boxes.len());
    if let Some((a, f)) = d
        .boxes
        .iter()
        .enumerate()
        .find(|(_, f)| f[0] >= nh || f[1] >= nh || f[2] >= nv || f[3] >= nv)
    {
        return fail(FormatErrorKind::Range, format!("box {a} has frame {f:?}"));
    }
    let box_groupoid = |what: &str, objects: usize, src: usize, tgt: usize, ids: Vec<usize>, rows: &[[usize; 3]], inv: &[usize]| {
        if let Some(&i) = ids.iter().find(|&&i| i >= nb) {
            return fail(FormatErrorKind::Range, format!("{what}: identity box {i} with {nb} boxes"));
        }
        if ids.len() != objects {
            return fail(FormatErrorKind::Schema, format!("{what}: {} identities for {objects} edges", ids.len()));
        }
        check_rows(what, rows, nb)?;
        let g = Groupoid::new(
            objects,
            d.boxes.iter().map(|f| f[src]).collect(),
            d.boxes.iter().map(|f| f[tgt]).collect(),
            ids,
            rows.iter().map(|r| (r[0], r[1], r[2])),
        )?;
        check_inverses(what, &g, inv)?;
        Ok(g)
    };
    let boxes_v = box_groupoid(
        "vertical box composition",
        nh,
        0,
        1,
        d.vertical_identities,
        &d.vertical_composition,
        &d.vertical_inverses,
    )?;
    let boxes_h = box_groupoid(
        "horizontal box composition",
        nv,
        2,
        3,
        d.horizontal_identities,
        &d.horizontal_composition,
        &d.horizontal_inverses,
    )?;
    DoubleGroupoid::new(h, v, boxes_v, boxes_h)
}

// Emission.

enum Node {
    Int(u64),
    Str(&'static str),
    /// Rendered inline.
    List(Vec<u64>),
    Rows(Vec<Vec<u64>>),
    Obj(Vec<(&'static str, Node)>),
}

fn render(node: &Node, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match node {
        Node::Int(n) => write!(out, "{n}").unwrap(),
        Node::Str(s) => write!(out, "{s:?}").unwrap(),
        Node::List(xs) => {
            let cells: Vec<String> = xs.iter().map(u64::to_string).collect();
            write!(out, "[{}]", cells.join(", ")).unwrap();
        }
        Node::Rows(rows) if rows.is_empty() => out.push_str("[]"),
        Node::Rows(rows) => {
            out.push_str("[\n");
            for (i, r) in rows.iter().enumerate() {
                let cells: Vec<String> = r.iter().map(u64::to_string).collect();
                let sep = if i + 1 < rows.len() { "," } else { "" };
                writeln!(out, "{pad}  [{}]{sep}", cells.join(", ")).unwrap();
            }
            write!(out, "{pad}]").unwrap();
        }
        Node::Obj(fields) => {
            out.push_str("{\n");
            for (i, (k, v)) in fields.iter().enumerate() {
                write!(out, "{pad}  \"{k}\": ").unwrap();
                render(v, indent + 1, out);
                out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
            }
            write!(out, "{pad}}}").unwrap();
        }
    }
}

fn singles(xs: impl IntoIterator<Item = usize>) -> Node {
    Node::List(xs.into_iter().map(|x| x as u64).collect())
}

fn rows<const K: usize>(mut xs: Vec<[usize; K]>) -> Node {
    xs.sort_unstable();
    Node::Rows(xs.into_iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect())
}

fn composition(g: &Groupoid) -> Node {
    rows(g.entries().into_iter().map(|(f, h, k)| [f, h, k]).collect())
}

fn inverses(g: &Groupoid) -> Node {
    singles((0..g.n_arrows()).map(|f| g.inv(f)))
}

fn groupoid_fields(g: &Groupoid) -> Vec<(&'static str, Node)> {
    vec![
        ("objects", Node::Int(g.n_objects() as u64)),
        (
            "arrows",
            Node::Rows((0..g.n_arrows()).map(|f| vec![g.source(f) as u64, g.target(f) as u64]).collect()),
        ),
        ("identities", singles(g.identities().iter().copied())),
        ("inverses", inverses(g)),
        ("composition", composition(g)),
    ]
}

fn header(kind: &'static str) -> Vec<(&'static str, Node)> {
    vec![("kind", Node::Str(kind)), ("version", Node::Str("1"))]
}

/// Canonical text of a document, newline-terminated.
pub fn emit(doc: &Document) -> String {
    let mut fields = header(doc.kind());
    match doc {
        Document::Groupoid(g) => fields.extend(groupoid_fields(g)),
        Document::DoubleGroupoid(t) => {
            let (bv, bh) = (t.vertical_boxes(), t.horizontal_boxes());
            fields.extend([
                ("horizontal", Node::Obj(groupoid_fields(t.horizontal()))),
                ("vertical", Node::Obj(groupoid_fields(t.vertical()))),
                (
                    "boxes",
                    Node::Rows(
                        (0..t.n_boxes())
                            .map(|a| [t.top(a), t.bottom(a), t.left(a), t.right(a)].iter().map(|&x| x as u64).collect())
                            .collect(),
                    ),
                ),
                ("vertical_identities", singles(bv.identities().iter().copied())),
                ("horizontal_identities", singles(bh.identities().iter().copied())),
                ("vertical_inverses", inverses(bv)),
                ("horizontal_inverses", inverses(bh)),
                ("vertical_composition", composition(bv)),
                ("horizontal_composition", composition(bh)),
            ]);
        }
        Document::MatchedPair(mp) => {
            fields.extend([
                ("vertical", Node::Obj(groupoid_fields(mp.vertical()))),
                ("horizontal", Node::Obj(groupoid_fields(mp.horizontal()))),
                ("actions", rows(mp.entries().into_iter().map(|(x, g, a, b)| [x, g, a, b]).collect())),
            ]);
        }
        Document::CocyclePair(c) => {
            let table = |xs: &[(usize, usize, u64)]| {
                let mut xs = xs.to_vec();
                xs.sort_unstable();
                Node::Rows(xs.into_iter().map(|(a, b, v)| vec![a as u64, b as u64, v]).collect())
            };
            fields.extend([
                ("modulus", Node::Int(c.modulus)),
                ("sigma", table(&c.sigma)),
                ("tau", table(&c.tau)),
            ]);
        }
        Document::FieldSpec(fs) => {
            fields.push(("characteristic", Node::Int(fs.characteristic)));
            if let Some(z) = fs.zeta {
                fields.push(("zeta", Node::Int(z)));
            }
        }
    }
    let mut out = String::new();
    render(&Node::Obj(fields), 0, &mut out);
    out.push('\n');
    out
}
