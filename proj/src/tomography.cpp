// Copyright 2026 The QFP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfp/tomography.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "qfp/error.hpp"
#include "qfp/gates.hpp"
#include "qfp/parallel.hpp"
#include "qfp/slice_sampler.hpp"

namespace qfp {
namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigenTol = 1e-10;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

DensityMatrix4::DensityMatrix4(const Matrix4c& entries) : entries_(entries) {
  if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw ValidationError("density matrix: not Hermitian");
  }
  if (std::abs(entries.trace() - Complex(1.0, 0.0)) > kTraceTol) {
    throw ValidationError("density matrix: trace is not 1");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix4c> eig(entries, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kEigenTol) {
    throw ValidationError("density matrix: negative eigenvalue");
  }
}

DensityMatrix4 DensityMatrix4::pure(const Vector4c& psi) {
  const double n = psi.squaredNorm();
  if (!(n > 0.0)) throw ValidationError("density matrix: zero state vector");
  return DensityMatrix4(Matrix4c(psi * psi.adjoint() / n));
}

DensityMatrix4 DensityMatrix4::maximally_mixed() {
  return DensityMatrix4(Matrix4c(Matrix4c::Identity() / 4.0));
}

DensityMatrix4 DensityMatrix4::from_factor(const Matrix4c& g) {
  Matrix4c r = g * g.adjoint();
  const double t = r.trace().real();
  if (!(t > 0.0)) throw ValidationError("density matrix: zero factor");
  r /= t;
  r = 0.5 * (r + r.adjoint()).eval();
  return DensityMatrix4(r, Unchecked{});
}

Vector4c ideal_entangled_state() {
  const double c = 1.0 / std::numbers::sqrt2;
  Vector4c psi = Vector4c::Zero();
  psi[1] = c;  // |1_{-4}>|1_5>
  psi[2] = c;  // |1_{-3}>|1_4>
  return psi;
}

double fidelity(const DensityMatrix4& rho, const Vector4c& psi) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
    throw ValidationError("fidelity: state vector is not normalised");
  }
  const Complex f = psi.adjoint() * rho.entries() * psi;
  if (std::abs(f.imag()) > 1e-10) throw ValidationError("fidelity: complex overlap");
  return f.real();
}

int QubitEncoding::a_index(int bin) const {
  if (bin == a_bins[0]) return 0;
  if (bin == a_bins[1]) return 1;
  throw ValidationError("bin " + std::to_string(bin) + " is not one of photon A's qubit bins");
}

int QubitEncoding::b_index(int bin) const {
  if (bin == b_bins[0]) return 0;
  if (bin == b_bins[1]) return 1;
  throw ValidationError("bin " + std::to_string(bin) + " is not one of photon B's qubit bins");
}

void TomoSetting::validate() const {
  if (data.coincidences > std::min(data.singles_a, data.singles_b)) {
    throw DataError("tomography setting: coincidences exceed singles");
  }
}

namespace {

// Projector onto outcome k after the local operation for `basis`.
Eigen::Matrix2d local_projector(Basis basis, int k) {
  Eigen::Matrix2d u = Eigen::Matrix2d::Identity();
  if (basis == Basis::kHadamard) u = hadamard().real();
  const Eigen::Vector2d row = u.row(k).transpose();
  return row * row.transpose();
}

Matrix4d kron(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  Matrix4d k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

// Projectors are real, so only Re(rho) enters.
struct SettingProjectors {
  Matrix4d ab, a0, zero_b;
};

SettingProjectors projectors(const TomoSetting& s, const QubitEncoding& enc) {
  const Eigen::Matrix2d pa = local_projector(s.basis_a, enc.a_index(s.bin_a));
  const Eigen::Matrix2d pb = local_projector(s.basis_b, enc.b_index(s.bin_b));
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  return {kron(pa, pb), kron(pa, id - pb), kron(id - pa, pb)};
}

double expectation(const Matrix4d& rho_real, const Matrix4d& proj) {
  return (rho_real.cwiseProduct(proj)).sum();
}

OutcomeProbabilities observed(const Matrix4d& rho_real, const SettingProjectors& p, double eta_a,
                              double eta_b) {
  const double p_ab = std::max(0.0, expectation(rho_real, p.ab));
  const double p_a0 = std::max(0.0, expectation(rho_real, p.a0));
  const double p_0b = std::max(0.0, expectation(rho_real, p.zero_b));
  const double p_00 = std::max(0.0, 1.0 - p_ab - p_a0 - p_0b);
  OutcomeProbabilities o;
  o.cc = eta_a * eta_b * p_ab;
  o.c0 = eta_a * (p_ab * (1.0 - eta_b) + p_a0);
  o.zero_c = eta_b * (p_ab * (1.0 - eta_a) + p_0b);
  o.zero_zero =
      p_ab * (1.0 - eta_a) * (1.0 - eta_b) + p_a0 * (1.0 - eta_a) + p_0b * (1.0 - eta_b) + p_00;
  return o;
}

struct OutcomeCounts {
  double cc, c0, zero_c, zero_zero;
};

OutcomeCounts outcome_counts(const TomoSetting& s, std::uint64_t n_pairs) {
  s.validate();
  const auto c = static_cast<double>(s.data.coincidences);
  const auto sa = static_cast<double>(s.data.singles_a);
  const auto sb = static_cast<double>(s.data.singles_b);
  const double none = static_cast<double>(n_pairs) - sa - sb + c;
  if (sa - c < 0 || sb - c < 0 || none < 0) {
    throw DataError("tomography setting: negative outcome count (is N below the singles?)");
  }
  return {c, sa - c, sb - c, none};
}

double term(double count, double p) {
  if (count == 0.0) return 0.0;
  if (!(p > 0.0)) return kNegInf;
  return count * std::log(p);
}

double setting_log_likelihood(const OutcomeCounts& n, const OutcomeProbabilities& p) {
  return term(n.cc, p.cc) + term(n.c0, p.c0) + term(n.zero_c, p.zero_c) +
         term(n.zero_zero, p.zero_zero);
}

void check_params(const TomoParams& params) {
  if (!(params.eta_a >= 0.0 && params.eta_a <= 1.0 && params.eta_b >= 0.0 &&
        params.eta_b <= 1.0)) {
    throw ValidationError("tomography: efficiencies must lie in [0, 1]");
  }
  if (params.n_pairs == 0) throw ValidationError("tomography: N must be positive");
}

}  // namespace

OutcomeProbabilities outcome_probabilities(const TomoParams& params, const TomoSetting& setting,
                                           const QubitEncoding& encoding) {
  check_params(params);
  return observed(params.rho.entries().real(), projectors(setting, encoding), params.eta_a,
                  params.eta_b);
}

double log_likelihood(const TomoParams& params, const std::vector<TomoSetting>& settings,
                      const QubitEncoding& encoding) {
  check_params(params);
  const Matrix4d re = params.rho.entries().real();
  double ll = 0.0;
  for (const auto& s : settings) {
    const auto counts = outcome_counts(s, params.n_pairs);
    ll += setting_log_likelihood(counts,
                                 observed(re, projectors(s, encoding), params.eta_a, params.eta_b));
  }
  return ll;
}

std::vector<TomoSetting> standard_settings(const QubitEncoding& encoding) {
  std::vector<TomoSetting> out;
  for (Basis ba : {Basis::kIdentity, Basis::kHadamard})
    for (Basis bb : {Basis::kIdentity, Basis::kHadamard})
      for (int a : encoding.a_bins)
        for (int b : encoding.b_bins) out.push_back({ba, bb, a, b, {}});
  return out;
}

namespace {

constexpr int kFactorParams = 32;
constexpr int kParams = kFactorParams + 2;
constexpr int kBatches = 20;
constexpr double kRhatLimit = 1.1;

Matrix4c factor_from(const Eigen::VectorXd& x) {
  Matrix4c g;
  for (int i = 0; i < 16; ++i) g(i / 4, i % 4) = Complex(x[i], x[16 + i]);
  return g;
}

struct ChainDraws {
  std::vector<Matrix4c> rho;
  std::vector<double> fidelity, eta_a, eta_b, log_post;
  std::uint64_t evaluations = 0;
};

MeanStd summarize(const std::vector<double>& v) {
  MeanStd m;
  const auto n = static_cast<double>(v.size());
  for (double x : v) m.mean += x;
  m.mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.std = v.size() > 1 ? std::sqrt(ss / (n - 1)) : 0.0;

  const std::size_t per = v.size() / kBatches;
  if (per > 0) {
    std::vector<double> means(kBatches, 0.0);
    for (int b = 0; b < kBatches; ++b) {
      for (std::size_t i = 0; i < per; ++i) means[b] += v[b * per + i];
      means[b] /= static_cast<double>(per);
    }
    double bm = 0.0, bss = 0.0;
    for (double x : means) bm += x;
    bm /= kBatches;
    for (double x : means) bss += (x - bm) * (x - bm);
    m.mc_error = std::sqrt(bss / (kBatches - 1) / kBatches);
  }
  return m;
}

// Compares the first and last quarter of the kept log-posterior trace.
bool still_trending(const std::vector<double>& log_post) {
  const std::size_t per = log_post.size() / kBatches;
  if (per == 0) return false;
  std::vector<double> means(kBatches, 0.0);
  for (int b = 0; b < kBatches; ++b) {
    for (std::size_t i = 0; i < per; ++i) means[b] += log_post[b * per + i];
    means[b] /= static_cast<double>(per);
  }
  const int q = kBatches / 4;
  double head = 0, tail = 0;
  for (int i = 0; i < q; ++i) {
    head += means[i];
    tail += means[kBatches - 1 - i];
  }
  head /= q;
  tail /= q;
  double mean = 0, ss = 0;
  for (double x : means) mean += x;
  mean /= kBatches;
  for (double x : means) ss += (x - mean) * (x - mean);
  const double batch_sd = std::sqrt(ss / (kBatches - 1));
  const double se = batch_sd * std::sqrt(2.0 / q);
  return se > 0.0 && std::abs(tail - head) > 4.0 * se;
}

// Gelman-Rubin potential scale reduction of a scalar across chains.
double chain_rhat(const std::vector<std::vector<double>>& chains) {
  const auto m = static_cast<double>(chains.size());
  const auto n = static_cast<double>(chains.front().size());
  std::vector<double> means;
  double w = 0.0;
  for (const auto& c : chains) {
    double mu = 0.0;
    for (double x : c) mu += x;
    mu /= n;
    double ss = 0.0;
    for (double x : c) ss += (x - mu) * (x - mu);
    w += ss / (n - 1.0) / m;
    means.push_back(mu);
  }
  double grand = 0.0;
  for (double mu : means) grand += mu / m;
  double b = 0.0;
  for (double mu : means) b += (mu - grand) * (mu - grand);
  b *= n / (m - 1.0);
  if (!(w > 0.0)) return 1.0;
  return std::sqrt(((n - 1.0) / n * w + b / n) / w);
}

}  // namespace

PosteriorSummary sample_posterior(const std::vector<TomoSetting>& settings,
                                  const PriorConfig& prior, const ChainConfig& chain) {
  if (settings.empty()) throw ValidationError("sample_posterior: no settings");
  if (chain.n_samples < 1000) {
    throw ValidationError("sample_posterior: need at least 1000 samples after burn-in");
  }
  if (chain.n_chains < 1) throw ValidationError("sample_posterior: need at least one chain");
  if (prior.n_pairs == 0) throw ValidationError("sample_posterior: N must be positive");
  if (std::abs(prior.target.squaredNorm() - 1.0) > 1e-10) {
    throw ValidationError("sample_posterior: target state is not normalised");
  }
  const int burn_in = chain.burn_in >= 0 ? chain.burn_in : chain.n_samples / 5;

  std::vector<SettingProjectors> proj;
  std::vector<OutcomeCounts> counts;
  for (const auto& s : settings) {
    proj.push_back(projectors(s, prior.encoding));
    counts.push_back(outcome_counts(s, prior.n_pairs));
  }

  auto log_posterior = [&](const Eigen::VectorXd& x) {
    const double eta_a = x[kFactorParams];
    const double eta_b = x[kFactorParams + 1];
    if (!(eta_a >= 0.0 && eta_a <= 1.0 && eta_b >= 0.0 && eta_b <= 1.0)) return kNegInf;
    const double log_prior = -0.5 * x.head(kFactorParams).squaredNorm();
    const Matrix4c g = factor_from(x);
    const Matrix4c gg = g * g.adjoint();
    const double tr = gg.trace().real();
    if (!(tr > 0.0)) return kNegInf;
    const Matrix4d re = gg.real() / tr;
    double ll = log_prior;
    for (std::size_t j = 0; j < proj.size(); ++j) {
      ll += setting_log_likelihood(counts[j], observed(re, proj[j], eta_a, eta_b));
      if (ll == kNegInf) return ll;
    }
    return ll;
  };

  std::vector<ChainDraws> draws(static_cast<std::size_t>(chain.n_chains));
  parallel_for(draws.size(), [&](std::size_t c) {
    std::mt19937_64 rng(chain.seed + 0x9e3779b97f4a7c15ULL * c);
    SliceSampler sampler(log_posterior, chain.width, chain.max_step_out);

    Eigen::VectorXd x = Eigen::VectorXd::Zero(kParams);
    for (int i = 0; i < 4; ++i) x[5 * i] = 1.0;  // G = I, rho = I/4
    x[kFactorParams] = 0.5;
    x[kFactorParams + 1] = 0.5;
    double lp = log_posterior(x);

    ChainDraws& d = draws[c];
    for (int it = 0; it < burn_in + chain.n_samples; ++it) {
      sampler.sweep(x, lp, rng);
      if (it < burn_in) continue;
      const auto rho = DensityMatrix4::from_factor(factor_from(x));
      d.rho.push_back(rho.entries());
      d.fidelity.push_back((prior.target.adjoint() * rho.entries() * prior.target)(0, 0).real());
      d.eta_a.push_back(x[kFactorParams]);
      d.eta_b.push_back(x[kFactorParams + 1]);
      d.log_post.push_back(lp);
    }
    d.evaluations = sampler.evaluations();
  });

  PosteriorSummary out;
  out.burn_in = burn_in;
  out.n_pairs = prior.n_pairs;
  std::vector<double> fid, ea, eb;
  Matrix4c sum = Matrix4c::Zero();
  Matrix4d sq_re = Matrix4d::Zero(), sq_im = Matrix4d::Zero();
  std::uint64_t evals = 0;
  for (const auto& d : draws) {
    for (const auto& r : d.rho) {
      sum += r;
      sq_re += r.real().cwiseAbs2();
      sq_im += r.imag().cwiseAbs2();
    }
    fid.insert(fid.end(), d.fidelity.begin(), d.fidelity.end());
    ea.insert(ea.end(), d.eta_a.begin(), d.eta_a.end());
    eb.insert(eb.end(), d.eta_b.begin(), d.eta_b.end());
    evals += d.evaluations;
    if (still_trending(d.log_post)) {
      out.converged = false;
      out.warning = "log-posterior still trending after burn-in; consider a longer chain";
    }
  }
  if (draws.size() > 1) {
    std::vector<std::vector<double>> per_chain;
    for (const auto& d : draws) per_chain.push_back(d.fidelity);
    out.fidelity_rhat = chain_rhat(per_chain);
    if (out.fidelity_rhat > kRhatLimit) {
      out.converged = false;
      out.warning = "chains disagree on the fidelity (R-hat above 1.1); consider longer chains";
    }
  }
  const auto n = static_cast<double>(fid.size());
  out.samples_used = static_cast<int>(fid.size());
  out.mean_rho = sum / n;
  out.mean_rho = 0.5 * (out.mean_rho + out.mean_rho.adjoint()).eval();
  const Matrix4d mean_re = out.mean_rho.real();
  const Matrix4d mean_im = out.mean_rho.imag();
  // Population variance from running sums; clamp rounding below zero.
  out.std_real = (sq_re / n - mean_re.cwiseAbs2()).cwiseMax(0.0).cwiseSqrt();
  out.std_imag = (sq_im / n - mean_im.cwiseAbs2()).cwiseMax(0.0).cwiseSqrt();
  out.fidelity = summarize(fid);
  out.eta_a = summarize(ea);
  out.eta_b = summarize(eb);
  out.evaluations_per_sample = static_cast<double>(evals) / (n + burn_in * chain.n_chains);
  return out;
}

}  // namespace qfp
