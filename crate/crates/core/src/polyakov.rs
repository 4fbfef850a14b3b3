//! Variational and integrated Polyakov formulas on sampled domain data.
//!
//! A domain is described by quadrature nodes (the caller owns the mesh and its
//! weights) together with its corners. All sums use pairwise summation so the
//! result does not depend on how the caller batches nodes.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use libm::{fabs, log};

use crate::special_functions::pairwise_sum;
use crate::{Error, Result};

/// Whether a corner sits on the boundary or is an interior cone point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CornerKind {
    InteriorConePoint,
    BoundaryCorner,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Corner {
    pub gamma: f64,
    pub kind: CornerKind,
    pub phi0: f64,
    pub phi_dot: f64,
}

/// Area-measure node.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InteriorNode {
    pub weight: f64,
    pub scal_g: f64,
    pub phi0: f64,
    pub phi_dot: f64,
    pub grad_phi0_sq: f64,
}

/// Length-measure node on the smooth part of the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundaryNode {
    pub weight: f64,
    pub k_g: f64,
    pub phi0: f64,
    pub phi_dot: f64,
    pub dphi0_dn: f64,
    pub dphi_dot_dn: f64,
}

/// Sampled surface with conformal factor data φ₀ and its variation φ̇.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CurvilinearDomainSpec {
    #[cfg_attr(feature = "serde", serde(default))]
    pub corners: Vec<Corner>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub interior_nodes: Vec<InteriorNode>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub boundary_nodes: Vec<BoundaryNode>,
    pub closed_surface: bool,
    pub area_g: f64,
    pub area_h: f64,
}

impl CurvilinearDomainSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.area_g > 0.0 && self.area_h > 0.0) {
            return Err(Error::InvalidSpec("areas must be positive"));
        }
        if self.interior_nodes.iter().any(|n| !(n.weight > 0.0)) || self.boundary_nodes.iter().any(|n| !(n.weight > 0.0)) {
            return Err(Error::InvalidSpec("node weights must be positive"));
        }
        if self.interior_nodes.iter().any(|n| !(n.grad_phi0_sq >= 0.0)) {
            return Err(Error::InvalidSpec("grad_phi0_sq must be non-negative"));
        }
        if self.corners.iter().any(|c| !(c.gamma > 0.0 && c.gamma < 2.0 * PI)) {
            return Err(Error::InvalidSpec("corner angles must lie in (0, 2*pi)"));
        }
        if self.closed_surface {
            if !self.boundary_nodes.is_empty() {
                return Err(Error::InvalidSpec("a closed surface has no boundary nodes"));
            }
            if self.corners.iter().any(|c| c.kind != CornerKind::InteriorConePoint) {
                return Err(Error::InvalidSpec("a closed surface has only interior cone points"));
            }
            let total = pairwise_sum(&self.interior_nodes.iter().map(|n| n.weight).collect::<Vec<_>>());
            if fabs(total - self.area_g) > 1e-9 * self.area_g {
                return Err(Error::InvalidSpec("area_g must equal the sum of interior weights"));
            }
        }
        Ok(())
    }
}

/// (N² − γ²)/(12πγ) with N = 2π for cone points and N = π for boundary corners.
pub fn corner_coefficient(kind: CornerKind, gamma: f64) -> f64 {
    let n = match kind {
        CornerKind::InteriorConePoint => 2.0 * PI,
        CornerKind::BoundaryCorner => PI,
    };
    (n * n - gamma * gamma) / (12.0 * PI * gamma)
}

fn sum_by<T, F: Fn(&T) -> f64>(items: &[T], f: F) -> f64 {
    pairwise_sum(&items.iter().map(f).collect::<Vec<_>>())
}

/// ∂/∂u(−log det Δ_{h_u}) at u = 0.
pub fn variational_polyakov(spec: &CurvilinearDomainSpec) -> Result<f64> {
    spec.validate()?;
    let projector = if spec.closed_surface { 1.0 / spec.area_h } else { 0.0 };
    let interior = sum_by(&spec.interior_nodes, |n| 2.0 * n.phi_dot * (n.scal_g / (24.0 * PI) - projector) * n.weight);
    let boundary = sum_by(&spec.boundary_nodes, |n| {
        (n.phi_dot * n.k_g / (6.0 * PI) + n.dphi_dot_dn / (4.0 * PI)) * n.weight
    });
    let corners = sum_by(&spec.corners, |c| c.phi_dot * corner_coefficient(c.kind, c.gamma));
    Ok(interior + boundary + corners)
}

/// log det Δ_{h₀} − log det Δ_g for h₀ = e^{2φ₀} g.
pub fn integrated_polyakov(spec: &CurvilinearDomainSpec) -> Result<f64> {
    spec.validate()?;
    let interior = sum_by(&spec.interior_nodes, |n| -(n.scal_g * n.phi0 + n.grad_phi0_sq) * n.weight / (12.0 * PI));
    let area = if spec.closed_surface { log(spec.area_h) - log(spec.area_g) } else { 0.0 };
    let boundary = sum_by(&spec.boundary_nodes, |n| {
        -(n.dphi0_dn / (4.0 * PI) + n.phi0 * n.k_g / (6.0 * PI)) * n.weight
    });
    let corners = sum_by(&spec.corners, |c| -c.phi0 * corner_coefficient(c.kind, c.gamma));
    Ok(interior + area + boundary + corners)
}

/// Flat unit sector of angle α with constant φ₀ and φ̇: `arc_nodes` equal-weight
/// nodes on the arc (curvature 1), one node on each straight edge, a
/// representative interior node, the vertex corner and two right-angle corners.
pub fn flat_sector_spec(alpha: f64, phi0: f64, phi_dot: f64, arc_nodes: usize) -> Result<CurvilinearDomainSpec> {
    if !(alpha > 0.0 && alpha < 2.0 * PI) || arc_nodes == 0 {
        return Err(Error::Domain("flat_sector_spec needs alpha in (0, 2*pi) and at least one arc node"));
    }
    let arc = BoundaryNode { weight: alpha / arc_nodes as f64, k_g: 1.0, phi0, phi_dot, dphi0_dn: 0.0, dphi_dot_dn: 0.0 };
    let edge = BoundaryNode { weight: 1.0, k_g: 0.0, ..arc };
    let mut boundary_nodes = vec![arc; arc_nodes];
    boundary_nodes.push(edge);
    boundary_nodes.push(edge);
    let corner = |gamma| Corner { gamma, kind: CornerKind::BoundaryCorner, phi0, phi_dot };
    let area = 0.5 * alpha;
    Ok(CurvilinearDomainSpec {
        corners: vec![corner(alpha), corner(0.5 * PI), corner(0.5 * PI)],
        interior_nodes: vec![InteriorNode { weight: area, scal_g: 0.0, phi0, phi_dot, grad_phi0_sq: 0.0 }],
        boundary_nodes,
        closed_surface: false,
        area_g: area,
        area_h: libm::exp(2.0 * phi0) * area,
    })
}
