//! Latitude-longitude finite-volume meshes fitted to a domain's bounding box.
//!
//! Geometry is computed on the unit sphere; measures and lengths reported to
//! callers are scaled by r² and r.

use std::collections::VecDeque;

use super::linalg::Csr;
use super::spec::{BoundingBox, DomainSpec};
use crate::error::{Error, Result};
use crate::rearrangement::MeasuredSamples;

/// Smallest accepted resolution.
pub const MIN_RESOLUTION: (usize, usize) = (64, 128);
/// Lower clamp on the boundary fraction of a cut face.
const MIN_ALPHA: f64 = 1e-3;

/// Where the Dirichlet face of a boundary cell lies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceSide {
    North,
    South,
    West,
    East,
}

/// A face between a domain cell and the exterior.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryFace {
    pub cell: usize,
    pub side: FaceSide,
    /// Geodesic length of the staircase face on S²(r).
    pub length: f64,
    /// Fraction of the center-to-center distance inside the domain.
    pub alpha: f64,
}

/// A domain cell: grid indices, center and measure on S²(r).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
    pub theta: f64,
    pub phi: f64,
    pub measure: f64,
}

/// Rasterized domain with its finite-volume operators on the unit sphere.
#[derive(Debug, Clone)]
pub struct DomainMesh {
    domain: DomainSpec,
    bbox: BoundingBox,
    n_lat: usize,
    n_lon: usize,
    dtheta: f64,
    dphi: f64,
    /// Level set at every grid center, row-major.
    level: Vec<f64>,
    /// Unknown index of each grid cell, `usize::MAX` outside.
    index: Vec<usize>,
    cells: Vec<Cell>,
    boundary: Vec<BoundaryFace>,
    stiffness: Csr,
    unit_areas: Vec<f64>,
    warnings: Vec<String>,
}

impl DomainMesh {
    pub fn build(domain: &DomainSpec, resolution: (usize, usize)) -> Result<Self> {
        let (n_lat, n_lon) = resolution;
        if n_lat < MIN_RESOLUTION.0 || n_lon < MIN_RESOLUTION.1 {
            return Err(Error::invalid(format!(
                "resolution {n_lat}x{n_lon} below the minimum {}x{}",
                MIN_RESOLUTION.0, MIN_RESOLUTION.1
            )));
        }
        let bbox = domain.kind.bounding_box();
        let dtheta = (bbox.theta.1 - bbox.theta.0) / n_lat as f64;
        let dphi = (bbox.phi.1 - bbox.phi.0) / n_lon as f64;
        let theta_c = |i: usize| bbox.theta.0 + (i as f64 + 0.5) * dtheta;
        let phi_c = |j: usize| bbox.phi.0 + (j as f64 + 0.5) * dphi;

        let mut level = Vec::with_capacity(n_lat * n_lon);
        for i in 0..n_lat {
            for j in 0..n_lon {
                level.push(domain.kind.level(theta_c(i), phi_c(j)));
            }
        }
        let mut index = vec![usize::MAX; n_lat * n_lon];
        let mut cells = Vec::new();
        let r2 = domain.manifold.r().powi(2);
        let mut unit_areas = Vec::new();
        for i in 0..n_lat {
            let t0 = bbox.theta.0 + i as f64 * dtheta;
            let area = dphi * (t0.cos() - (t0 + dtheta).cos());
            for j in 0..n_lon {
                if level[i * n_lon + j] > 0.0 {
                    index[i * n_lon + j] = cells.len();
                    cells.push(Cell {
                        row: i,
                        col: j,
                        theta: theta_c(i),
                        phi: phi_c(j),
                        measure: r2 * area,
                    });
                    unit_areas.push(area);
                }
            }
        }
        if cells.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if bbox.periodic && bbox.theta == (0.0, std::f64::consts::PI) && cells.len() == n_lat * n_lon {
            return Err(Error::DomainSpec("domain covers the whole sphere".into()));
        }

        let mut mesh = Self {
            domain: domain.clone(),
            bbox,
            n_lat,
            n_lon,
            dtheta,
            dphi,
            level,
            index,
            cells,
            boundary: Vec::new(),
            stiffness: Csr::from_rows(Vec::new()),
            unit_areas,
            warnings: Vec::new(),
        };
        mesh.assemble();
        let components = mesh.components();
        if components > 1 {
            mesh.warnings.push(format!(
                "domain has {components} connected components; the eigenpair belongs to one of them"
            ));
        }
        Ok(mesh)
    }

    fn theta_face(&self, i: usize) -> f64 {
        self.bbox.theta.0 + i as f64 * self.dtheta
    }

    fn neighbor(&self, i: usize, j: usize, side: FaceSide) -> Option<(usize, usize)> {
        match side {
            FaceSide::North => i.checked_sub(1).map(|i| (i, j)),
            FaceSide::South => (i + 1 < self.n_lat).then_some((i + 1, j)),
            FaceSide::West => match j.checked_sub(1) {
                Some(j) => Some((i, j)),
                None => self.bbox.periodic.then_some((i, self.n_lon - 1)),
            },
            FaceSide::East => {
                if j + 1 < self.n_lon {
                    Some((i, j + 1))
                } else {
                    self.bbox.periodic.then_some((i, 0))
                }
            }
        }
    }

    /// Level set at the grid center (i, j), which may lie outside the box.
    fn level_at(&self, i: isize, j: isize) -> f64 {
        if i >= 0 && (i as usize) < self.n_lat && j >= 0 && (j as usize) < self.n_lon {
            return self.level[i as usize * self.n_lon + j as usize];
        }
        let theta = self.bbox.theta.0 + (i as f64 + 0.5) * self.dtheta;
        let phi = self.bbox.phi.0 + (j as f64 + 0.5) * self.dphi;
        self.domain.kind.level(theta, phi)
    }

    fn assemble(&mut self) {
        let n = self.cells.len();
        let r = self.domain.manifold.r();
        let bitmap = self.domain.kind.is_bitmap();
        let mut rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n);
        let mut boundary = Vec::new();
        for (c, cell) in self.cells.iter().enumerate() {
            let (i, j) = (cell.row, cell.col);
            let sin_c = cell.theta.sin();
            let mut row = Vec::with_capacity(5);
            let mut diag = 0.0;
            for side in [FaceSide::North, FaceSide::South, FaceSide::West, FaceSide::East] {
                let (coef, length, toward) = match side {
                    FaceSide::North => {
                        let s = self.theta_face(i).sin();
                        (s * self.dphi / self.dtheta, s * self.dphi, (i as isize - 1, j as isize))
                    }
                    FaceSide::South => {
                        let s = self.theta_face(i + 1).sin();
                        (s * self.dphi / self.dtheta, s * self.dphi, (i as isize + 1, j as isize))
                    }
                    FaceSide::West => (self.dtheta / (sin_c * self.dphi), self.dtheta, (i as isize, j as isize - 1)),
                    FaceSide::East => (self.dtheta / (sin_c * self.dphi), self.dtheta, (i as isize, j as isize + 1)),
                };
                // Faces on a pole carry no flux.
                if coef <= 1e-14 * self.dphi / self.dtheta {
                    continue;
                }
                match self.neighbor(i, j, side) {
                    Some((ni, nj)) if self.index[ni * self.n_lon + nj] != usize::MAX => {
                        let k = self.index[ni * self.n_lon + nj];
                        row.push((k, -coef));
                        diag += coef;
                    }
                    neighbor => {
                        let alpha = match neighbor {
                            Some(_) if !bitmap => {
                                let inside = self.level[i * self.n_lon + j];
                                let outside = self.level_at(toward.0, toward.1);
                                (inside / (inside - outside)).clamp(MIN_ALPHA, 1.0)
                            }
                            _ => 0.5,
                        };
                        diag += coef / alpha;
                        boundary.push(BoundaryFace {
                            cell: c,
                            side,
                            length: r * length,
                            alpha,
                        });
                    }
                }
            }
            row.push((c, diag));
            rows.push(row);
        }
        self.stiffness = Csr::from_rows(rows);
        self.boundary = boundary;
    }

    /// Number of 4-connected components of the domain cells.
    fn components(&self) -> usize {
        let n = self.cells.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(c) = queue.pop_front() {
                let (cols, _) = self.stiffness.row(c);
                for &k in cols {
                    if !seen[k] {
                        seen[k] = true;
                        queue.push_back(k);
                    }
                }
            }
        }
        count
    }

    pub fn domain(&self) -> &DomainSpec {
        &self.domain
    }

    pub fn resolution(&self) -> (usize, usize) {
        (self.n_lat, self.n_lon)
    }

    pub fn bounding_box(&self) -> BoundingBox {
        self.bbox
    }

    pub fn spacing(&self) -> (f64, f64) {
        (self.dtheta, self.dphi)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn boundary(&self) -> &[BoundaryFace] {
        &self.boundary
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Cell measures on S²(r).
    pub fn measures(&self) -> Vec<f64> {
        self.cells.iter().map(|c| c.measure).collect()
    }

    /// vol(D) on S²(r).
    pub fn volume(&self) -> f64 {
        self.cells.iter().map(|c| c.measure).sum()
    }

    /// Length of the staircase boundary on S²(r).
    pub fn staircase_length(&self) -> f64 {
        self.boundary.iter().map(|f| f.length).sum()
    }

    /// Stiffness matrix of −Δ on the unit sphere with Dirichlet faces.
    pub fn stiffness(&self) -> &Csr {
        &self.stiffness
    }

    /// Diagonal mass matrix (cell areas) on the unit sphere.
    pub fn unit_areas(&self) -> &[f64] {
        &self.unit_areas
    }

    /// Unknown index of grid cell (i, j), if it belongs to the domain.
    pub fn cell_index(&self, row: usize, col: usize) -> Option<usize> {
        let k = *self.index.get(row * self.n_lon + col)?;
        (k != usize::MAX).then_some(k)
    }

    pub(crate) fn level_grid(&self, i: isize, j: isize) -> f64 {
        self.level_at(i, j)
    }

    pub(crate) fn center(&self, i: isize, j: isize) -> (f64, f64) {
        (
            self.bbox.theta.0 + (i as f64 + 0.5) * self.dtheta,
            self.bbox.phi.0 + (j as f64 + 0.5) * self.dphi,
        )
    }

    /// Pairs a per-cell field with the cell measures; negative rounding
    /// residue is clipped to zero.
    pub fn samples(&self, values: &[f64]) -> Result<MeasuredSamples> {
        if values.len() != self.cells.len() {
            return Err(Error::invalid("field length differs from the cell count"));
        }
        MeasuredSamples::new(values.iter().map(|v| v.max(0.0)).collect(), self.measures())
    }
}

/// Builds the mesh of `domain` at `resolution` = (n_lat, n_lon) over its bounding box.
pub fn build_mesh(domain: &DomainSpec, resolution: (usize, usize)) -> Result<DomainMesh> {
    DomainMesh::build(domain, resolution)
}
