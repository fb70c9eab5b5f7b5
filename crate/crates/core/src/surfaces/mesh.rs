//! Marching cubes over a [`ScalarField3D`].
//!
//! Corners that are not states count as below the level, so surfaces close
//! against the edge of the physical region. A vertex on an edge between a
//! physical and a non-physical corner sits at the edge midpoint; all other
//! vertices are linearly interpolated. Vertices are shared between cells
//! through a key on the lattice edge they lie on.

use std::collections::HashMap;

use super::tables::TRI_TABLE;
use super::ScalarField3D;
use crate::error::{Error, Result};

const CORNERS: [[usize; 3]; 8] = [
    [0, 0, 0],
    [1, 0, 0],
    [1, 1, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 0, 1],
    [1, 1, 1],
    [0, 1, 1],
];

const EDGES: [[usize; 2]; 12] = [
    [0, 1],
    [1, 2],
    [2, 3],
    [3, 0],
    [4, 5],
    [5, 6],
    [6, 7],
    [7, 4],
    [0, 4],
    [1, 5],
    [2, 6],
    [3, 7],
];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IsoSurfaceMesh {
    pub level: f64,
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[u32; 3]>,
    /// Whether each vertex was placed on an edge leaving the physical
    /// region rather than interpolated.
    pub clipped: Vec<bool>,
}

impl IsoSurfaceMesh {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Number of pieces, joining triangles that share a vertex.
    pub fn connected_components(&self) -> usize {
        self.component_sizes().len()
    }

    /// Triangle counts of each piece, largest first.
    pub fn component_sizes(&self) -> Vec<usize> {
        let mut parent: Vec<u32> = (0..self.vertices.len() as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for t in &self.triangles {
            let a = find(&mut parent, t[0]);
            for &v in &t[1..] {
                let b = find(&mut parent, v);
                if a != b {
                    parent[b as usize] = a;
                }
            }
        }
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for t in &self.triangles {
            *counts.entry(find(&mut parent, t[0])).or_default() += 1;
        }
        let mut sizes: Vec<usize> = counts.into_values().collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Undirected edges used by exactly one triangle.
    pub fn open_edge_count(&self) -> usize {
        let mut uses: HashMap<(u32, u32), usize> = HashMap::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *uses.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        uses.values().filter(|&&n| n == 1).count()
    }

    /// Checks that indices are in range and vertices lie in [−1, 1]³.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len() as u32;
        if self.triangles.iter().flatten().any(|&i| i >= n) {
            return Err(Error::Internal("triangle index out of range".into()));
        }
        if self.clipped.len() != self.vertices.len() {
            return Err(Error::Internal(
                "clipped flags do not match vertices".into(),
            ));
        }
        if self
            .vertices
            .iter()
            .flatten()
            .any(|x| !x.is_finite() || x.abs() > 1.0)
        {
            return Err(Error::Internal("vertex outside the sampled box".into()));
        }
        Ok(())
    }
}

pub fn extract_isosurface(field: &ScalarField3D, level: f64) -> Result<IsoSurfaceMesh> {
    if level.is_nan() || level < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "level must be nonnegative, got {level}"
        )));
    }
    let n = field.resolution();
    let mut mesh = IsoSurfaceMesh {
        level,
        ..Default::default()
    };
    let mut welded: HashMap<usize, u32> = HashMap::new();
    let below = |v: Option<f64>| v.is_none_or(|x| x < level);

    for k in 0..n - 1 {
        for j in 0..n - 1 {
            for i in 0..n - 1 {
                let pos = CORNERS.map(|[di, dj, dk]| [i + di, j + dj, k + dk]);
                let vals = pos.map(|[a, b, c]| field.get(a, b, c));
                let mut case = 0;
                for (bit, &v) in vals.iter().enumerate() {
                    if below(v) {
                        case |= 1 << bit;
                    }
                }
                let row = &TRI_TABLE[case];
                for tri in row.chunks(3).take_while(|t| t[0] >= 0) {
                    let mut ids = [0u32; 3];
                    for (slot, &e) in ids.iter_mut().zip(tri) {
                        let [ca, cb] = EDGES[e as usize];
                        let (pa, pb) = (pos[ca], pos[cb]);
                        let lo = if pa <= pb { pa } else { pb };
                        let axis = (0..3).find(|&d| pa[d] != pb[d]).expect("edge");
                        let key = 3 * (lo[0] + n * (lo[1] + n * lo[2])) + axis;
                        *slot = *welded.entry(key).or_insert_with(|| {
                            let (t, clipped) = match (vals[ca], vals[cb]) {
                                (Some(va), Some(vb)) if va != vb => {
                                    (((level - va) / (vb - va)).clamp(0.0, 1.0), false)
                                }
                                (Some(_), Some(_)) => (0.5, false),
                                _ => (0.5, true),
                            };
                            let xa = field.point(pa[0], pa[1], pa[2]);
                            let xb = field.point(pb[0], pb[1], pb[2]);
                            mesh.vertices
                                .push([0, 1, 2].map(|d| xa[d] + t * (xb[d] - xa[d])));
                            mesh.clipped.push(clipped);
                            (mesh.vertices.len() - 1) as u32
                        });
                    }
                    mesh.triangles.push(ids);
                }
            }
        }
    }
    Ok(mesh)
}
