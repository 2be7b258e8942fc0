use std::collections::BTreeMap;
use std::path::Path;

use finmet::report::Report;
use finmet::{BlockMetric, BoolRelation, CostMatrix, FinMap, FinSpace, Matrix, Submetric};

use crate::document::{self, CorelationEntry, CostEntry, Document, Entry, MapEntry, RelationEntry, Rows, SpaceEntry, SubmetricEntry};
use crate::CliError;

/// Entries of one document, indexed by kind and name.
#[derive(Debug, Default)]
pub struct Workspace {
    spaces: BTreeMap<String, SpaceEntry>,
    maps: BTreeMap<String, MapEntry>,
    submetrics: BTreeMap<String, SubmetricEntry>,
    corelations: BTreeMap<String, CorelationEntry>,
    costs: BTreeMap<String, CostEntry>,
    relations: BTreeMap<String, RelationEntry>,
}

fn insert<T>(map: &mut BTreeMap<String, T>, kind: &'static str, name: String, value: T) -> Result<(), CliError> {
    if map.contains_key(&name) {
        return Err(CliError::Duplicate { kind, name });
    }
    map.insert(name, value);
    Ok(())
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, kind: &'static str, name: &str) -> Result<&'a T, CliError> {
    map.get(name).ok_or_else(|| CliError::Missing {
        kind,
        name: name.to_string(),
    })
}

pub fn matrix(rows: &Rows) -> Result<Matrix, CliError> {
    Ok(Matrix::from_rows(rows.clone())?)
}

impl Workspace {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let doc = document::parse(&text).map_err(|e| CliError::Parse(e.to_string()))?;
        Workspace::from_document(doc)
    }

    pub fn from_document(doc: Document) -> Result<Self, CliError> {
        let mut ws = Workspace::default();
        for entry in doc.entries {
            match entry {
                Entry::Space(e) => insert(&mut ws.spaces, "space", e.name.clone(), e)?,
                Entry::Map(e) => insert(&mut ws.maps, "map", e.name.clone(), e)?,
                Entry::Submetric(e) => insert(&mut ws.submetrics, "submetric", e.name.clone(), e)?,
                Entry::Corelation(e) => insert(&mut ws.corelations, "corelation", e.name.clone(), e)?,
                Entry::Cost(e) => insert(&mut ws.costs, "cost", e.name.clone(), e)?,
                Entry::Relation(e) => insert(&mut ws.relations, "relation", e.name.clone(), e)?,
            }
        }
        let refs = ws
            .maps
            .values()
            .flat_map(|m| [&m.source, &m.target])
            .chain(ws.submetrics.values().map(|s| &s.base))
            .chain(ws.corelations.values().map(|c| &c.base));
        for name in refs {
            lookup(&ws.spaces, "space", name)?;
        }
        Ok(ws)
    }

    /// Labels and matrix of a space, without the metric axioms checked.
    pub fn raw_space(&self, name: &str) -> Result<(Vec<String>, Matrix), CliError> {
        let e = lookup(&self.spaces, "space", name)?;
        Ok((e.points.clone(), matrix(&e.dist)?))
    }

    pub fn space(&self, name: &str) -> Result<FinSpace, CliError> {
        let (labels, dist) = self.raw_space(name)?;
        Ok(FinSpace::new(labels, dist)?)
    }

    /// A map with lengths and labels resolved but non-expansiveness unchecked.
    pub fn map_candidate(&self, name: &str) -> Result<FinMap, CliError> {
        let e = lookup(&self.maps, "map", name)?;
        let (source, target) = (self.space(&e.source)?, self.space(&e.target)?);
        let assignment = e
            .assignment
            .iter()
            .map(|l| target.index_of(l))
            .collect::<finmet::Result<Vec<_>>>()?;
        Ok(FinMap::candidate(source, target, assignment)?)
    }

    pub fn map(&self, name: &str) -> Result<FinMap, CliError> {
        let f = self.map_candidate(name)?;
        let report = f.check_nonexpansive();
        if !report.is_valid() {
            return Err(finmet::Error::NotNonExpansive(report).into());
        }
        Ok(f)
    }

    pub fn raw_submetric(&self, name: &str) -> Result<(FinSpace, Matrix), CliError> {
        let e = lookup(&self.submetrics, "submetric", name)?;
        Ok((self.space(&e.base)?, matrix(&e.gamma)?))
    }

    pub fn submetric(&self, name: &str) -> Result<Submetric, CliError> {
        let (base, gamma) = self.raw_submetric(name)?;
        Ok(Submetric::new(base, gamma)?)
    }

    /// Blocks assembled by shape only; callers validate.
    pub fn corelation(&self, name: &str) -> Result<BlockMetric, CliError> {
        let e = lookup(&self.corelations, "corelation", name)?;
        let base = self.space(&e.base)?;
        Ok(BlockMetric::from_blocks(
            base,
            matrix(&e.g00)?,
            matrix(&e.g01)?,
            matrix(&e.g10)?,
            matrix(&e.g11)?,
        )?)
    }

    pub fn cost(&self, name: &str) -> Result<CostMatrix, CliError> {
        let e = lookup(&self.costs, "cost", name)?;
        Ok(CostMatrix::new(e.points.clone(), matrix(&e.rho)?)?)
    }

    pub fn relation(&self, name: &str) -> Result<BoolRelation, CliError> {
        let e = lookup(&self.relations, "relation", name)?;
        Ok(BoolRelation::new(e.points.clone(), e.rel.clone())?)
    }

    pub fn validate_space(&self, name: &str) -> Result<Report, CliError> {
        let (labels, dist) = self.raw_space(name)?;
        Ok(finmet::validate_metric(&labels, &dist)?)
    }
}
