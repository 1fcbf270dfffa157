//! Mesh input: OFF files and JSON documents
//! `{"vertices": [[x,y,z]…], "triangles": [[i,j,k]…], "values": [v…], "areas": [a…]}`.

use serde::{Deserialize, Serialize};

use super::{MeshError, ScalarField, TriMesh};

/// Parses an OFF file. Faces with more than three vertices are fanned.
pub fn parse_off(text: &str) -> Result<TriMesh, MeshError> {
    let mut tokens = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    let perr = |msg: &str| MeshError::Parse(format!("OFF: {msg}"));
    match tokens.next() {
        Some("OFF") => {}
        Some(other) => return Err(perr(&format!("expected `OFF` header, found `{other}`"))),
        None => return Err(perr("empty input")),
    }
    let mut count = |what: &str| -> Result<usize, MeshError> {
        tokens
            .next()
            .ok_or_else(|| perr(&format!("missing {what}")))?
            .parse()
            .map_err(|_| perr(&format!("invalid {what}")))
    };
    let nv = count("vertex count")?;
    let nf = count("face count")?;
    let _ne = count("edge count")?;
    let mut number = |what: &str| -> Result<f64, MeshError> {
        let tok = tokens
            .next()
            .ok_or_else(|| perr(&format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| perr(&format!("invalid {what} `{tok}`")))
    };
    let mut positions = Vec::with_capacity(nv);
    for _ in 0..nv {
        positions.push([
            number("coordinate")?,
            number("coordinate")?,
            number("coordinate")?,
        ]);
    }
    let mut triangles = Vec::with_capacity(nf);
    for f in 0..nf {
        let k = number("face size")? as usize;
        if k < 3 {
            return Err(perr(&format!("face {f} has {k} vertices")));
        }
        let mut idx = Vec::with_capacity(k);
        for _ in 0..k {
            let i = number("face index")?;
            if i < 0.0 || i.fract() != 0.0 || i as usize >= nv {
                return Err(perr(&format!("face {f} has invalid index {i}")));
            }
            idx.push(i as usize);
        }
        for j in 1..k - 1 {
            triangles.push([idx[0], idx[j], idx[j + 1]]);
        }
    }
    Ok(TriMesh::new(positions, triangles))
}

/// Parses per-vertex values given as a JSON array or as whitespace-separated
/// numbers.
pub fn parse_values(text: &str) -> Result<Vec<f64>, MeshError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return serde_json::from_str(trimmed).map_err(|e| MeshError::Parse(format!("values: {e}")));
    }
    text.lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|tok| {
            tok.parse()
                .map_err(|_| MeshError::Parse(format!("values: invalid number `{tok}`")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshDocument {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub areas: Option<Vec<f64>>,
}

impl MeshDocument {
    pub fn from_json(text: &str) -> Result<Self, MeshError> {
        serde_json::from_str(text).map_err(|e| MeshError::Parse(format!("JSON mesh: {e}")))
    }

    pub fn from_mesh(mesh: &TriMesh) -> Self {
        Self {
            vertices: mesh.positions.clone(),
            triangles: mesh.triangles.clone(),
            values: None,
            areas: None,
        }
    }

    /// Document carrying the field's mesh and values (areas are recomputed
    /// from positions on reading).
    pub fn from_field(field: &ScalarField) -> Self {
        Self {
            values: Some(field.values().to_vec()),
            ..Self::from_mesh(field.mesh())
        }
    }

    pub fn mesh(&self) -> TriMesh {
        TriMesh::new(self.vertices.clone(), self.triangles.clone())
    }

    /// Builds the field, taking values from `values` when given, else from the
    /// document.
    pub fn into_field(self, values: Option<Vec<f64>>) -> Result<ScalarField, MeshError> {
        let mesh = self.mesh();
        let values = values
            .or(self.values)
            .ok_or_else(|| MeshError::Invalid("no vertex values given".into()))?;
        ScalarField::new(mesh, values, self.areas)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const OCTA_OFF: &str = "OFF
# octahedron
6 8 12
1 0 0
0 1 0
0 0 1
-1 0 0
0 -1 0
0 0 -1
3 0 1 2
3 1 3 2
3 3 4 2
3 4 0 2
3 1 0 5
3 3 1 5
3 4 3 5
3 0 4 5
";

    #[test]
    fn reads_off() {
        let mesh = parse_off(OCTA_OFF).unwrap();
        assert_eq!(mesh, crate::mesh::octahedron());
    }

    #[test]
    fn fans_polygons() {
        let text = "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n";
        let mesh = parse_off(text).unwrap();
        assert_eq!(mesh.triangles, vec![[0, 1, 2], [0, 2, 3]]);
    }

    #[test]
    fn off_errors() {
        for bad in [
            "",
            "PLY",
            "OFF\n1 0",
            "OFF\n1 1 0\n0 0 0\n3 0 0 5",
            "OFF\n1 0 0\n0 x 0",
        ] {
            assert!(
                matches!(parse_off(bad), Err(MeshError::Parse(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn values_formats() {
        assert_eq!(parse_values("[1, 2.5, -3]").unwrap(), vec![1.0, 2.5, -3.0]);
        assert_eq!(
            parse_values("1\n2.5 # c\n-3").unwrap(),
            vec![1.0, 2.5, -3.0]
        );
        assert!(parse_values("1 two").is_err());
    }

    #[test]
    fn json_document() {
        let text = r#"{"vertices": [[1,0,0],[0,1,0],[0,0,1],[-1,0,0],[0,-1,0],[0,0,-1]],
            "triangles": [[0,1,2],[1,3,2],[3,4,2],[4,0,2],[1,0,5],[3,1,5],[4,3,5],[0,4,5]],
            "values": [0, 0, 0.5, 0, 0, -0.5],
            "areas": [1, 1, 1, 1, 1, 1, 1, 5]}"#;
        let field = MeshDocument::from_json(text)
            .unwrap()
            .into_field(None)
            .unwrap();
        assert!((field.areas()[7] - 5.0 / 12.0).abs() < 1e-15);
        let doc = MeshDocument::from_field(&field);
        let again = MeshDocument::from_json(&serde_json::to_string(&doc).unwrap()).unwrap();
        assert_eq!(again.values.unwrap(), field.values());
    }
}
