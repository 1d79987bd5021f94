#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "hyperwave/evolution.hpp"

namespace hyperwave::evolution {

namespace {

double opnorm(const CMatrix& A) {
  if (A.size() == 0) return 0;
  Eigen::BDCSVD<CMatrix> svd(A);
  return svd.singularValues()(0);
}

}  // namespace

CMatrix RieszProjection::matrix(const GeneratorMatrix& gen) const {
  const int n = gen.grid()->size();
  // P_full = E P R Pi; restrict_odd already contains R Pi.
  CMatrix id = CMatrix::Identity(2 * n, 2 * n);
  return gen.extend(compact * gen.restrict_odd(id));
}

EnergyState RieszProjection::apply(const EnergyState& x) const {
  return EnergyState::from_compact(x.grid(), compact * x.compact());
}

RieszProjection riesz_projection(const GeneratorMatrix& gen, const std::vector<Circle>& circles) {
  const Eigen::Index m = gen.odd_block().rows();
  RieszProjection out;
  out.contour = circles;
  out.compact = CMatrix::Zero(m, m);
  std::vector<CMatrix> parts;
  for (const auto& c : circles) {
    require(c.radius > 0 && c.nodes >= 8, ErrorKind::invalid_argument, "contour circle needs radius > 0 and >= 8 nodes");
    CMatrix P = CMatrix::Zero(m, m);
    for (int k = 0; k < c.nodes; ++k) {
      Complex e = std::polar(1.0, 2 * std::numbers::pi * (k + 0.5) / c.nodes);
      Complex lam = c.center + c.radius * e;
      try {
        ResolventMatrix R(gen, lam);
        P += (c.radius * e / static_cast<double>(c.nodes)) * R.inverse_compact();
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::near_spectrum) fail(ErrorKind::contour, "contour quadrature node hits the spectrum");
        throw;
      }
    }
    parts.push_back(P);
    out.compact += P;
  }

  Eigen::BDCSVD<CMatrix> svd(out.compact);
  const auto& sv = svd.singularValues();
  out.rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-6) ++out.rank;

  CMatrix Pf = out.matrix(gen);
  const CMatrix& L = gen.matrix();
  double pn = opnorm(Pf);
  out.idempotency_defect = opnorm(Pf * Pf - Pf) / std::max(1.0, pn);
  out.commutator_defect = opnorm(Pf * L - L * Pf) / (opnorm(L) * std::max(1.0, pn));

  const CMatrix& A = gen.odd_block();
  for (const auto& P : parts) {
    Complex tr = P.trace();
    int r = static_cast<int>(std::lround(tr.real()));
    if (r <= 0) {
      out.nilpotency.emplace_back(Complex(NAN, NAN), 0);
      continue;
    }
    Complex lam = (A * P).trace() / tr;
    double pnorm = opnorm(P);
    CMatrix N = A;
    N.diagonal().array() -= lam;
    CMatrix W = N * P;
    int k = 1;
    while (opnorm(W) > 1e-8 * std::max(1.0, pnorm) && k <= r) {
      W = N * W;
      ++k;
    }
    require(k <= r, ErrorKind::inconsistency, "projection range is not annihilated by (L - lambda)^rank");
    out.nilpotency.emplace_back(lam, k - 1);
  }
  return out;
}

}  // namespace hyperwave::evolution
