//! Finite binary contexts and their derivation operators.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::subset::{AttributeSet, ObjectSet};

/// A formal context: attributes, objects and the incidence between them.
///
/// Incidence is stored attribute-major (one row per attribute), the way the
/// relation tables are usually written down. Object columns are cached for
/// the upward derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    attributes: Vec<String>,
    objects: Vec<String>,
    rows: Vec<ObjectSet>,
    columns: Vec<AttributeSet>,
}

impl FormalContext {
    /// Builds a context from an attribute-major boolean matrix.
    pub fn new(
        attributes: Vec<String>,
        objects: Vec<String>,
        incidence: Vec<Vec<bool>>,
    ) -> Result<Self> {
        check_distinct(&attributes, "attribute")?;
        check_distinct(&objects, "object")?;
        if incidence.len() != attributes.len() {
            return Err(Error::MalformedContext(format!(
                "incidence has {} rows for {} attributes",
                incidence.len(),
                attributes.len()
            )));
        }
        let mut rows = Vec::with_capacity(attributes.len());
        for (a, row) in incidence.iter().enumerate() {
            if row.len() != objects.len() {
                return Err(Error::MalformedContext(format!(
                    "row of attribute `{}` has {} cells for {} objects",
                    attributes[a],
                    row.len(),
                    objects.len()
                )));
            }
            rows.push(ObjectSet::from_indices(
                objects.len(),
                row.iter().enumerate().filter(|(_, &v)| v).map(|(x, _)| x),
            ));
        }
        Ok(Self::from_rows(attributes, objects, rows))
    }

    /// Convenience constructor from a 0/1 table, mostly for fixtures.
    pub fn from_table(attributes: &[&str], objects: &[&str], table: &[&[u8]]) -> Result<Self> {
        let incidence = table
            .iter()
            .map(|row| row.iter().map(|&v| v != 0).collect())
            .collect();
        Self::new(
            attributes.iter().map(|s| s.to_string()).collect(),
            objects.iter().map(|s| s.to_string()).collect(),
            incidence,
        )
    }

    fn from_rows(attributes: Vec<String>, objects: Vec<String>, rows: Vec<ObjectSet>) -> Self {
        let columns = (0..objects.len())
            .map(|x| {
                AttributeSet::from_indices(
                    attributes.len(),
                    rows.iter()
                        .enumerate()
                        .filter(|(_, r)| r.contains(x))
                        .map(|(a, _)| a),
                )
            })
            .collect();
        FormalContext {
            attributes,
            objects,
            rows,
            columns,
        }
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_attributes(&self) -> usize {
        self.attributes.len()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn incident(&self, attribute: usize, object: usize) -> bool {
        self.rows[attribute].contains(object)
    }

    /// Objects having attribute `a` (the row of `a`).
    pub fn row(&self, attribute: usize) -> &ObjectSet {
        &self.rows[attribute]
    }

    /// Attributes of object `x` (the column of `x`).
    pub fn column(&self, object: usize) -> &AttributeSet {
        &self.columns[object]
    }

    pub fn attribute_index(&self, name: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::InvalidElement(format!("unknown attribute `{name}`")))
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::InvalidElement(format!("unknown object `{name}`")))
    }

    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet> {
        let mut set = AttributeSet::empty(self.num_attributes());
        for n in names {
            set.insert(self.attribute_index(n.as_ref()).map_err(|_| {
                Error::InvalidSubset(format!("unknown attribute `{}`", n.as_ref()))
            })?);
        }
        Ok(set)
    }

    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        let mut set = ObjectSet::empty(self.num_objects());
        for n in names {
            set.insert(self.object_index(n.as_ref()).map_err(|_| {
                Error::InvalidSubset(format!("unknown object `{}`", n.as_ref()))
            })?);
        }
        Ok(set)
    }

    pub fn attribute_names(&self, set: &AttributeSet) -> Vec<String> {
        set.iter().map(|a| self.attributes[a].clone()).collect()
    }

    pub fn object_names(&self, set: &ObjectSet) -> Vec<String> {
        set.iter().map(|x| self.objects[x].clone()).collect()
    }

    fn check_objects(&self, set: &ObjectSet) -> Result<()> {
        if set.universe() != self.num_objects() {
            return Err(Error::InvalidSubset(format!(
                "object set over {} indices used with a context of {} objects",
                set.universe(),
                self.num_objects()
            )));
        }
        Ok(())
    }

    fn check_attributes(&self, set: &AttributeSet) -> Result<()> {
        if set.universe() != self.num_attributes() {
            return Err(Error::InvalidSubset(format!(
                "attribute set over {} indices used with a context of {} attributes",
                set.universe(),
                self.num_attributes()
            )));
        }
        Ok(())
    }

    /// Attributes shared by every object of `objects`.
    pub fn derive_up(&self, objects: &ObjectSet) -> Result<AttributeSet> {
        self.check_objects(objects)?;
        Ok(self.up(objects))
    }

    /// Objects having every attribute of `attributes`.
    pub fn derive_down(&self, attributes: &AttributeSet) -> Result<ObjectSet> {
        self.check_attributes(attributes)?;
        Ok(self.down(attributes))
    }

    /// `derive_up` intersected with the attribute subset `d`.
    pub fn derive_up_restricted(&self, objects: &ObjectSet, d: &AttributeSet) -> Result<AttributeSet> {
        self.check_attributes(d)?;
        let mut up = self.derive_up(objects)?;
        up.intersect_with(d);
        Ok(up)
    }

    pub(crate) fn up(&self, objects: &ObjectSet) -> AttributeSet {
        let mut acc = AttributeSet::full(self.num_attributes());
        for x in objects.iter() {
            acc.intersect_with(&self.columns[x]);
        }
        acc
    }

    pub(crate) fn down(&self, attributes: &AttributeSet) -> ObjectSet {
        let mut acc = ObjectSet::full(self.num_objects());
        for a in attributes.iter() {
            acc.intersect_with(&self.rows[a]);
        }
        acc
    }

    /// The closure `X ↦ X↑↓` on object sets.
    pub fn close_objects(&self, objects: &ObjectSet) -> Result<ObjectSet> {
        self.check_objects(objects)?;
        Ok(self.down(&self.up(objects)))
    }

    /// The closure `Y ↦ Y↓↑` on attribute sets.
    pub fn close_attributes(&self, attributes: &AttributeSet) -> Result<AttributeSet> {
        self.check_attributes(attributes)?;
        Ok(self.up(&self.down(attributes)))
    }

    /// The subcontext on the attributes of `d`, keeping object order and the
    /// relative order of the kept attributes.
    pub fn restrict_attributes(&self, d: &AttributeSet) -> Result<FormalContext> {
        self.check_attributes(d)?;
        let attributes = d.iter().map(|a| self.attributes[a].clone()).collect();
        let rows = d.iter().map(|a| self.rows[a].clone()).collect();
        Ok(Self::from_rows(attributes, self.objects.clone(), rows))
    }

    /// The subcontext on the objects of `keep`.
    pub fn restrict_objects(&self, keep: &ObjectSet) -> Result<FormalContext> {
        self.check_objects(keep)?;
        let kept: Vec<usize> = keep.to_vec();
        let objects = kept.iter().map(|&x| self.objects[x].clone()).collect();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                ObjectSet::from_indices(
                    kept.len(),
                    kept.iter().enumerate().filter(|(_, &x)| r.contains(x)).map(|(i, _)| i),
                )
            })
            .collect();
        Ok(Self::from_rows(self.attributes.clone(), objects, rows))
    }

    /// Swaps the roles of attributes and objects.
    pub fn transpose(&self) -> FormalContext {
        let rows = self.columns.iter().map(|c| c.clone().retag()).collect();
        Self::from_rows(self.objects.clone(), self.attributes.clone(), rows)
    }

    /// Appends an object whose column is `attributes`.
    pub fn with_object(&self, name: &str, attributes: &AttributeSet) -> Result<FormalContext> {
        self.check_attributes(attributes)?;
        if self.objects.iter().any(|o| o == name) || self.attributes.iter().any(|a| a == name) {
            return Err(Error::FreshNameCollision(name.to_string()));
        }
        let n = self.num_objects();
        let mut objects = self.objects.clone();
        objects.push(name.to_string());
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(a, r)| {
                let mut grown = ObjectSet::from_indices(n + 1, r.iter());
                if attributes.contains(a) {
                    grown.insert(n);
                }
                grown
            })
            .collect();
        Ok(Self::from_rows(self.attributes.clone(), objects, rows))
    }

    /// Appends an attribute whose row is `objects`.
    pub fn with_attribute(&self, name: &str, objects: &ObjectSet) -> Result<FormalContext> {
        Ok(self
            .transpose()
            .with_object(name, &objects.clone().retag())?
            .transpose())
    }
}

fn check_distinct(names: &[String], what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(Error::MalformedContext(format!("duplicate {what} name `{n}`")));
        }
    }
    Ok(())
}
