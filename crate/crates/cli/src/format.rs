//! JSON file formats. Element, object and base names are symbolic and
//! resolved against the declared base. Serialization is canonical: the
//! emitted form re-parses to the same model and re-serializes byte-identically.
//!
//! Bases are referenced by fixture name (`q2`, `q3`, `p2`, `n3`, `trop:<N>`,
//! `idm:<name>`) or given inline:
//!
//! ```json
//! {
//!   "name": "q3",
//!   "objects": ["*"],
//!   "homs": [{ "src": "*", "dst": "*", "elements": ["0", "m", "1"], "order": [["0", "m"], ["m", "1"]] }],
//!   "identities": ["1"],
//!   "compositions": [{ "path": ["*", "*", "*"], "table": [["0", "0", "0"], ["0", "m", "m"], ["0", "m", "1"]] }]
//! }
//! ```
//!
//! `order` lists generating pairs `x <= y`; `table[g][f]` is `g ∘ f` for
//! `f: path[0] -> path[1]` and `g: path[1] -> path[2]`.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use qorder_core::fixtures::fixture;
use qorder_core::{
    Arrow, Elem, EnrichedStructure, FiniteLattice, ObjId, ObjectMap, Probe, QMatrix, Quantaloid, SemiDistributor,
    TypedSet,
};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomSpec {
    pub src: String,
    pub dst: String,
    pub elements: Vec<String>,
    pub order: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionSpec {
    pub path: (String, String, String),
    pub table: Vec<Vec<String>>,
}

/// A base given in full.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineQuant {
    pub name: String,
    pub objects: Vec<String>,
    pub homs: Vec<HomSpec>,
    pub identities: Vec<String>,
    pub compositions: Vec<CompositionSpec>,
}

/// A base by fixture name or in full.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Fixture(String),
    Inline(Box<InlineQuant>),
}

/// Contents of a `.quant` file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantFile {
    Fixture { fixture: String },
    Inline(Box<InlineQuant>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
}

/// Contents of a `.struct` file: `hom[r][c]` is `A(r, c)`, an arrow `t c -> t r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructFile {
    pub base: BaseRef,
    pub objects: Vec<ObjectSpec>,
    pub hom: Vec<Vec<String>>,
}

/// A structure inline or by path, relative to the referencing file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StructRef {
    Path(String),
    Inline(Box<StructFile>),
}

/// Contents of a `.mat` file: a semidistributor `dom ⇸ cod`, rows indexed by
/// `cod` objects and columns by `dom` objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatFile {
    pub dom: StructRef,
    pub cod: StructRef,
    pub entries: Vec<Vec<String>>,
}

/// Contents of a `.map` file: an object map by object names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub dom: StructRef,
    pub cod: StructRef,
    pub map: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplittingSpec {
    pub object: String,
    pub via: String,
    pub f: String,
    pub u: String,
}

/// Contents of a `.witness` file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WitnessFile {
    Isomorphism { forward: MatFile, backward: MatFile },
    Equivalence { f: MapFile, g: MapFile },
    Splitting { splittings: Vec<SplittingSpec> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSpec {
    pub object: String,
    pub idempotent: String,
    pub phi: Vec<String>,
    pub phi_star: Vec<String>,
}

/// The probe behind each object of a completion, by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub structure: Vec<String>,
    pub embedding: Option<Vec<(String, String)>>,
    pub probes: Vec<ProbeSpec>,
}

/// Canonical text of any model: pretty JSON with a trailing newline.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file models serialize");
    s.push('\n');
    s
}

/// Parses JSON text, with line and column on failure.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| {
        CliError::Input(format!("{origin}:{}:{}: {}", e.line(), e.column(), strip_position(&e.to_string())))
    })
}

fn strip_position(msg: &str) -> &str {
    msg.find(" at line ").map_or(msg, |i| &msg[..i])
}

pub fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Resolves named bases once per run so that structures share one `Arc`.
#[derive(Default)]
pub struct Resolver {
    bases: HashMap<String, Arc<Quantaloid>>,
}

impl Resolver {
    pub fn base(&mut self, r: &BaseRef) -> Result<Arc<Quantaloid>, CliError> {
        match r {
            BaseRef::Fixture(name) => self.fixture(name),
            BaseRef::Inline(q) => {
                let key = format!("inline:{}", to_canonical(q));
                if let Some(b) = self.bases.get(&key) {
                    return Ok(b.clone());
                }
                let b = Arc::new(build_inline(q)?);
                self.bases.insert(key, b.clone());
                Ok(b)
            }
        }
    }

    pub fn fixture(&mut self, name: &str) -> Result<Arc<Quantaloid>, CliError> {
        if let Some(b) = self.bases.get(name) {
            return Ok(b.clone());
        }
        let b = Arc::new(fixture(name).map_err(|e| input(e.to_string()))?);
        self.bases.insert(name.to_string(), b.clone());
        Ok(b)
    }

    pub fn quant_file(&mut self, f: &QuantFile) -> Result<Arc<Quantaloid>, CliError> {
        match f {
            QuantFile::Fixture { fixture } => self.fixture(fixture),
            QuantFile::Inline(q) => self.base(&BaseRef::Inline(q.clone())),
        }
    }

    /// A fixture name or the path of a `.quant` file.
    pub fn base_arg(&mut self, arg: &str) -> Result<(Arc<Quantaloid>, BaseRef), CliError> {
        if Path::new(arg).is_file() {
            let f: QuantFile = read(Path::new(arg))?;
            let q = self.quant_file(&f)?;
            let r = match f {
                QuantFile::Fixture { fixture } => BaseRef::Fixture(fixture),
                QuantFile::Inline(q) => BaseRef::Inline(q),
            };
            Ok((q, r))
        } else {
            Ok((self.fixture(arg)?, BaseRef::Fixture(arg.to_string())))
        }
    }

    pub fn structure(&mut self, f: &StructFile) -> Result<Arc<EnrichedStructure>, CliError> {
        let q = self.base(&f.base)?;
        build_structure(q, f).map(Arc::new)
    }

    pub fn struct_ref(&mut self, r: &StructRef, dir: &Path) -> Result<(Arc<EnrichedStructure>, StructFile), CliError> {
        let file = match r {
            StructRef::Inline(f) => (**f).clone(),
            StructRef::Path(p) => read(&dir.join(p))?,
        };
        Ok((self.structure(&file)?, file))
    }

    pub fn semidistributor(&mut self, f: &MatFile, dir: &Path) -> Result<SemiDistributor, CliError> {
        let (dom, _) = self.struct_ref(&f.dom, dir)?;
        let (cod, _) = self.struct_ref(&f.cod, dir)?;
        let q = dom.base().clone();
        let mat = matrix_from_names(&q, cod.obs(), dom.obs(), &f.entries, "entries")?;
        SemiDistributor::new(dom, cod, mat).map_err(|e| input(e.to_string()))
    }

    pub fn object_map(&mut self, f: &MapFile, dir: &Path) -> Result<ObjectMap, CliError> {
        let (dom, _) = self.struct_ref(&f.dom, dir)?;
        let (cod, _) = self.struct_ref(&f.cod, dir)?;
        let mut map = vec![None; dom.n_objects()];
        for (from, to) in &f.map {
            let a = dom.obs().find(from).ok_or_else(|| input(format!("map: unknown object `{from}`")))?;
            let b = cod.obs().find(to).ok_or_else(|| input(format!("map: unknown object `{to}`")))?;
            if map[a].replace(b).is_some() {
                return Err(input(format!("map: object `{from}` is mapped twice")));
            }
        }
        let map = map
            .into_iter()
            .enumerate()
            .map(|(a, b)| b.ok_or_else(|| input(format!("map: object `{}` is not mapped", dom.obs().name(a)))))
            .collect::<Result<Vec<_>, _>>()?;
        ObjectMap::new(dom, cod, map).map_err(|e| input(e.to_string()))
    }
}

/// Directory against which relative paths inside `file` are resolved.
pub fn dir_of(file: &Path) -> PathBuf {
    file.parent().map(Path::to_path_buf).unwrap_or_default()
}

fn find_object(q: &Quantaloid, name: &str, at: &str) -> Result<ObjId, CliError> {
    q.find_object(name).ok_or_else(|| input(format!("{at}: unknown base object `{name}`")))
}

fn find_elem(lat: &FiniteLattice, name: &str, at: &str) -> Result<Elem, CliError> {
    lat.find(name).ok_or_else(|| input(format!("{at}: `{name}` is not in {:?}", lat.names())))
}

pub fn build_inline(f: &InlineQuant) -> Result<Quantaloid, CliError> {
    let n = f.objects.len();
    let index = |name: &str, at: &str| {
        f.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| input(format!("{at}: unknown object `{name}`")))
    };
    let mut homs: Vec<Option<FiniteLattice>> = vec![None; n * n];
    for (i, h) in f.homs.iter().enumerate() {
        let at = format!("homs[{i}]");
        let (s, d) = (index(&h.src, &at)?, index(&h.dst, &at)?);
        let m = h.elements.len();
        let pos = |x: &str| {
            h.elements
                .iter()
                .position(|e| e == x)
                .ok_or_else(|| input(format!("{at}: unknown element `{x}`")))
        };
        let mut le = vec![vec![false; m]; m];
        for (x, row) in le.iter_mut().enumerate() {
            row[x] = true;
        }
        for (x, y) in &h.order {
            le[pos(x)?][pos(y)?] = true;
        }
        // reflexive-transitive closure
        for k in 0..m {
            for x in 0..m {
                for y in 0..m {
                    if le[x][k] && le[k][y] {
                        le[x][y] = true;
                    }
                }
            }
        }
        let lat = FiniteLattice::new(h.elements.clone(), le).map_err(|e| input(format!("{at}: {e}")))?;
        if homs[s * n + d].replace(lat).is_some() {
            return Err(input(format!("{at}: hom {} -> {} declared twice", h.src, h.dst)));
        }
    }
    let homs: Vec<FiniteLattice> = homs
        .into_iter()
        .enumerate()
        .map(|(i, h)| h.ok_or_else(|| input(format!("missing hom {} -> {}", f.objects[i / n], f.objects[i % n]))))
        .collect::<Result<_, _>>()?;
    if f.identities.len() != n {
        return Err(input(format!("{} identities for {n} objects", f.identities.len())));
    }
    let ids = f
        .identities
        .iter()
        .enumerate()
        .map(|(a, name)| find_elem(&homs[a * n + a], name, &format!("identities[{a}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut comp: Vec<Option<Vec<Elem>>> = vec![None; n * n * n];
    for (i, c) in f.compositions.iter().enumerate() {
        let at = format!("compositions[{i}]");
        let (a, b, d) = (index(&c.path.0, &at)?, index(&c.path.1, &at)?, index(&c.path.2, &at)?);
        let (ab, bd, ad) = (&homs[a * n + b], &homs[b * n + d], &homs[a * n + d]);
        if c.table.len() != bd.len() || c.table.iter().any(|r| r.len() != ab.len()) {
            return Err(input(format!("{at}: table must be {} rows of {} entries", bd.len(), ab.len())));
        }
        let mut table = Vec::with_capacity(ab.len() * bd.len());
        for row in &c.table {
            for x in row {
                table.push(find_elem(ad, x, &at)?);
            }
        }
        if comp[(a * n + b) * n + d].replace(table).is_some() {
            return Err(input(format!("{at}: composition declared twice")));
        }
    }
    let comp = comp
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or_else(|| {
                let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
                input(format!("missing composition {} -> {} -> {}", f.objects[a], f.objects[b], f.objects[c]))
            })
        })
        .collect::<Result<_, _>>()?;
    Quantaloid::new(f.name.clone(), f.objects.clone(), homs, comp, ids).map_err(|e| input(e.to_string()))
}

/// The canonical inline description of a base.
pub fn inline_of(q: &Quantaloid) -> InlineQuant {
    let objs = q.object_names().to_vec();
    let mut homs = Vec::new();
    for a in q.objects() {
        for b in q.objects() {
            let lat = q.hom(a, b);
            homs.push(HomSpec {
                src: objs[a.0].clone(),
                dst: objs[b.0].clone(),
                elements: lat.names().to_vec(),
                order: lat
                    .covers()
                    .into_iter()
                    .map(|(x, y)| (lat.name(x).to_string(), lat.name(y).to_string()))
                    .collect(),
            });
        }
    }
    let identities = q.objects().map(|a| q.hom(a, a).name(q.identity(a)).to_string()).collect();
    let mut compositions = Vec::new();
    for a in q.objects() {
        for b in q.objects() {
            for c in q.objects() {
                let table = q
                    .hom(b, c)
                    .elements()
                    .map(|g| {
                        q.hom(a, b)
                            .elements()
                            .map(|f| q.hom(a, c).name(q.comp(a, b, c, g, f)).to_string())
                            .collect()
                    })
                    .collect();
                compositions.push(CompositionSpec {
                    path: (objs[a.0].clone(), objs[b.0].clone(), objs[c.0].clone()),
                    table,
                });
            }
        }
    }
    InlineQuant {
        name: q.name().to_string(),
        objects: objs,
        homs,
        identities,
        compositions,
    }
}

pub fn matrix_from_names(
    q: &Quantaloid,
    rows: &Arc<TypedSet>,
    cols: &Arc<TypedSet>,
    names: &[Vec<String>],
    at: &str,
) -> Result<QMatrix, CliError> {
    if names.len() != rows.len() || names.iter().any(|r| r.len() != cols.len()) {
        return Err(input(format!("{at}: expected {} rows of {} entries", rows.len(), cols.len())));
    }
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for (r, row) in names.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            let lat = q.hom(cols.type_of(c), rows.type_of(r));
            entries.push(find_elem(lat, x, &format!("{at}[{r}][{c}]"))?);
        }
    }
    QMatrix::new(q, rows.clone(), cols.clone(), entries).map_err(|e| input(e.to_string()))
}

fn build_structure(q: Arc<Quantaloid>, f: &StructFile) -> Result<EnrichedStructure, CliError> {
    let names = f.objects.iter().map(|o| o.name.clone()).collect();
    let types = f
        .objects
        .iter()
        .enumerate()
        .map(|(i, o)| find_object(&q, &o.ty, &format!("objects[{i}]")))
        .collect::<Result<_, _>>()?;
    let obs = Arc::new(TypedSet::new(names, types).map_err(|e| input(e.to_string()))?);
    let hom = matrix_from_names(&q, &obs, &obs, &f.hom, "hom")?;
    EnrichedStructure::from_matrix(q, hom).map_err(|e| input(e.to_string()))
}

pub fn struct_file(s: &EnrichedStructure, base: BaseRef) -> StructFile {
    let q = s.base();
    StructFile {
        base,
        objects: (0..s.n_objects())
            .map(|x| ObjectSpec {
                name: s.obs().name(x).to_string(),
                ty: q.object_name(s.type_of(x)).to_string(),
            })
            .collect(),
        hom: s.hom_matrix().entry_names(q),
    }
}

pub fn mat_file(phi: &SemiDistributor, dom: BaseRef, cod: BaseRef) -> MatFile {
    MatFile {
        dom: StructRef::Inline(Box::new(struct_file(phi.dom(), dom))),
        cod: StructRef::Inline(Box::new(struct_file(phi.cod(), cod))),
        entries: phi.mat().entry_names(phi.base()),
    }
}

pub fn map_file(f: &ObjectMap, dom: BaseRef, cod: BaseRef) -> MapFile {
    MapFile {
        dom: StructRef::Inline(Box::new(struct_file(f.dom(), dom))),
        cod: StructRef::Inline(Box::new(struct_file(f.cod(), cod))),
        map: (0..f.dom().n_objects())
            .map(|a| (f.dom().obs().name(a).to_string(), f.cod().obs().name(f.apply(a)).to_string()))
            .collect(),
    }
}

pub fn probe_spec(q: &Quantaloid, object: &str, p: &Probe, b: &EnrichedStructure) -> ProbeSpec {
    let x = p.idempotent.src;
    ProbeSpec {
        object: object.to_string(),
        idempotent: q.arrow_name(p.idempotent),
        phi: (0..b.n_objects())
            .map(|y| q.hom(x, b.type_of(y)).name(p.phi[y]).to_string())
            .collect(),
        phi_star: (0..b.n_objects())
            .map(|y| q.hom(b.type_of(y), x).name(p.phi_star[y]).to_string())
            .collect(),
    }
}

/// Resolves a splitting witness against a category.
pub fn splittings_from(
    a: &EnrichedStructure,
    specs: &[SplittingSpec],
) -> Result<Vec<qorder_core::Splitting>, CliError> {
    let q = a.base();
    let mut out = vec![None; a.n_objects()];
    for (i, s) in specs.iter().enumerate() {
        let at = format!("splittings[{i}]");
        let x = a.obs().find(&s.object).ok_or_else(|| input(format!("{at}: unknown object `{}`", s.object)))?;
        let ta = a.type_of(x);
        let via = find_object(q, &s.via, &at)?;
        let f = find_elem(q.hom(ta, via), &s.f, &at)?;
        let u = find_elem(q.hom(via, ta), &s.u, &at)?;
        out[x] = Some(qorder_core::Splitting { object: via, f, u });
    }
    out.into_iter()
        .enumerate()
        .map(|(x, s)| s.ok_or_else(|| input(format!("no splitting given for object `{}`", a.obs().name(x)))))
        .collect()
}

pub fn splitting_specs(a: &EnrichedStructure, splittings: &[qorder_core::Splitting]) -> Vec<SplittingSpec> {
    let q = a.base();
    splittings
        .iter()
        .enumerate()
        .map(|(x, s)| {
            let ta = a.type_of(x);
            SplittingSpec {
                object: a.obs().name(x).to_string(),
                via: q.object_name(s.object).to_string(),
                f: q.hom(ta, s.object).name(s.f).to_string(),
                u: q.hom(s.object, ta).name(s.u).to_string(),
            }
        })
        .collect()
}

/// Name of an endo-arrow, for messages.
pub fn endo_name(q: &Quantaloid, x: ObjId, e: Elem) -> String {
    q.arrow_name(Arrow::endo(x, e))
}
