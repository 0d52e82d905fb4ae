/**
 * Copyright 2026 The gbsbench authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gbsbench/gbsbench.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include "core/channels.hpp"
#include "core/correlator.hpp"
#include "core/fock.hpp"
#include "core/io.hpp"
#include "core/version.hpp"

namespace {

thread_local std::string g_last_error;

int set_error(int code, const char* what) {
  g_last_error = what != nullptr ? what : "unknown error";
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return GBSB_OK;
  } catch (const gbs::UnsupportedError& e) {
    return set_error(GBSB_ERR_UNSUPPORTED, e.what());
  } catch (const gbs::ParameterError& e) {
    return set_error(GBSB_ERR_PARAM, e.what());
  } catch (const gbs::NumericalError& e) {
    return set_error(GBSB_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return set_error(GBSB_ERR_NUMERIC, e.what());
  }
}

}  // namespace

struct gbsb_state {
  // Product-form description; present only while the handle still describes
  // an uncorrelated input (constructors, loss, noise preserve it; evolution
  // and reduction drop it).
  std::optional<gbs::InputSpec> spec;
  gbs::GaussianState state;
};

struct gbsb_unitary {
  gbs::UnitaryMatrix u;
};

namespace {

void make_state_from_spec(const gbs::InputSpec& spec, gbsb_state** out) {
  *out = new gbsb_state{spec, spec.to_state()};
}

}  // namespace

extern "C" {

const char* gbsb_version(void) { return gbs::kVersion; }

const char* gbsb_last_error(void) { return g_last_error.c_str(); }

int gbsb_state_squeezed(double r, int modes, int occupied, gbsb_state** out) {
  if (out == nullptr) return set_error(GBSB_ERR_PARAM, "null output pointer");
  return guarded([&]() {
    make_state_from_spec(gbs::InputSpec::squeezed(r, modes, occupied), out);
  });
}

int gbsb_state_thermal(double nbar, int modes, int occupied, gbsb_state** out) {
  if (out == nullptr) return set_error(GBSB_ERR_PARAM, "null output pointer");
  return guarded([&]() {
    make_state_from_spec(gbs::InputSpec::thermal(nbar, modes, occupied), out);
  });
}

int gbsb_state_coherent(double alpha_re, double alpha_im, int modes, int occupied,
                        gbsb_state** out) {
  if (out == nullptr) return set_error(GBSB_ERR_PARAM, "null output pointer");
  return guarded([&]() {
    make_state_from_spec(
        gbs::InputSpec::coherent(gbs::Complex(alpha_re, alpha_im), modes, occupied), out);
  });
}

int gbsb_state_classical(double vq, double vp, int modes, int occupied,
                         gbsb_state** out) {
  if (out == nullptr) return set_error(GBSB_ERR_PARAM, "null output pointer");
  return guarded([&]() {
    make_state_from_spec(gbs::InputSpec::classical_asymmetric(vq, vp, modes, occupied),
                         out);
  });
}

void gbsb_state_free(gbsb_state* state) { delete state; }

int gbsb_state_mode_count(const gbsb_state* state) {
  return state != nullptr ? state->state.mode_count() : 0;
}

int gbsb_state_covariance(const gbsb_state* state, double* out) {
  if (state == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  const auto& cov = state->state.covariance();
  for (Eigen::Index r = 0; r < cov.rows(); ++r) {
    for (Eigen::Index c = 0; c < cov.cols(); ++c) {
      out[r * cov.cols() + c] = cov(r, c);
    }
  }
  return GBSB_OK;
}

int gbsb_state_displacement(const gbsb_state* state, double* out) {
  if (state == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  const auto& xi = state->state.displacement();
  for (Eigen::Index i = 0; i < xi.size(); ++i) out[i] = xi(i);
  return GBSB_OK;
}

int gbsb_state_purity(const gbsb_state* state, double* out) {
  if (state == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() { *out = state->state.purity(); });
}

int gbsb_state_total_mean_photon(const gbsb_state* state, double* out) {
  if (state == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() { *out = state->state.total_mean_photon(); });
}

int gbsb_state_with_loss(const gbsb_state* state, double eta, gbsb_state** out) {
  if (state == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() {
    auto lossy = new gbsb_state{std::nullopt, gbs::apply_loss(state->state, eta)};
    if (state->spec.has_value()) lossy->spec = state->spec->with_loss(eta);
    *out = lossy;
  });
}

int gbsb_state_with_noise(const gbsb_state* state, double nu, gbsb_state** out) {
  if (state == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() {
    auto noisy = new gbsb_state{std::nullopt, gbs::apply_noise(state->state, nu)};
    if (state->spec.has_value()) noisy->spec = state->spec->with_noise(nu);
    *out = noisy;
  });
}

int gbsb_squeezing_threshold(double nu, double* r_min) {
  if (r_min == nullptr) return set_error(GBSB_ERR_PARAM, "null output pointer");
  return guarded([&]() { *r_min = gbs::squeezing_threshold(nu); });
}

int gbsb_unitary_haar(int modes, uint64_t master_seed, uint64_t trial,
                      gbsb_unitary** out) {
  if (out == nullptr) return set_error(GBSB_ERR_PARAM, "null output pointer");
  return guarded([&]() {
    gbs::RngStream rng(master_seed, gbs::RngPurpose::kHaarUnitary, trial);
    *out = new gbsb_unitary{gbs::sample_haar_unitary(modes, rng)};
  });
}

int gbsb_unitary_from_entries(int modes, const double* re, const double* im,
                              gbsb_unitary** out) {
  if (re == nullptr || im == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() {
    if (modes < 1) throw gbs::ParameterError("mode count must be >= 1");
    Eigen::MatrixXcd entries(modes, modes);
    for (int r = 0; r < modes; ++r) {
      for (int c = 0; c < modes; ++c) {
        entries(r, c) = gbs::Complex(re[r * modes + c], im[r * modes + c]);
      }
    }
    *out = new gbsb_unitary{gbs::UnitaryMatrix(std::move(entries), true)};
  });
}

void gbsb_unitary_free(gbsb_unitary* u) { delete u; }

int gbsb_unitary_dim(const gbsb_unitary* u) { return u != nullptr ? u->u.dim() : 0; }

int gbsb_unitary_entries(const gbsb_unitary* u, double* re, double* im) {
  if (u == nullptr || re == nullptr || im == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  const auto& m = u->u.entries();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re[r * m.cols() + c] = m(r, c).real();
      im[r * m.cols() + c] = m(r, c).imag();
    }
  }
  return GBSB_OK;
}

int gbsb_state_evolve(const gbsb_state* state, const gbsb_unitary* u,
                      gbsb_state** out) {
  if (state == nullptr || u == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() {
    *out = new gbsb_state{std::nullopt, gbs::evolve(state->state, u->u)};
  });
}

int gbsb_reduce_two_modes(const gbsb_state* state, int j, int k, gbsb_state** out) {
  if (state == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() {
    *out = new gbsb_state{std::nullopt,
                          gbs::reduce_two_modes(state->state, j, k).state};
  });
}

int gbsb_correlator(const gbsb_state* input, const gbsb_unitary* u, int j, int k,
                    double* out) {
  if (input == nullptr || u == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  if (!input->spec.has_value()) {
    return set_error(GBSB_ERR_PARAM,
                     "formula correlator requires a product-form input handle");
  }
  return guarded([&]() { *out = gbs::correlator_general(*input->spec, u->u, j, k); });
}

int gbsb_correlator_of_state(const gbsb_state* state, int j, int k, double* out) {
  if (state == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() { *out = gbs::correlator_from_state(state->state, j, k); });
}

int gbsb_analytic_moments(int modes, int occupied, double mean_photon,
                          double eccentricity, double out_moments[3]) {
  if (out_moments == nullptr) return set_error(GBSB_ERR_PARAM, "null output pointer");
  return guarded([&]() {
    const gbs::HaarMoments m =
        gbs::analytic_moments(modes, occupied, mean_photon, eccentricity);
    out_moments[0] = m.m1;
    out_moments[1] = m.m2;
    out_moments[2] = m.m3;
  });
}

int gbsb_signatures_from_moments(double m1, double m2, double m3, int modes,
                                 int occupied, double out_signatures[3]) {
  if (out_signatures == nullptr) return set_error(GBSB_ERR_PARAM, "null output pointer");
  return guarded([&]() {
    const gbs::SignatureSummary s =
        gbs::signatures_from_moments(m1, m2, m3, modes, occupied);
    out_signatures[0] = s.nm;
    out_signatures[1] = s.cv;
    out_signatures[2] = s.sk;
  });
}

int gbsb_joint_photon_distribution(const gbsb_state* two_mode_state, int n_max,
                                   double* probs, double* captured_mass) {
  if (two_mode_state == nullptr || probs == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() {
    gbs::ReducedTwoModeState reduced{two_mode_state->state, 0, 1};
    const gbs::JointPhotonDistribution dist =
        gbs::joint_photon_distribution(reduced, n_max);
    const int d = n_max + 1;
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) probs[a * d + b] = dist.probabilities(a, b);
    }
    if (captured_mass != nullptr) *captured_mass = dist.captured_mass;
  });
}

int gbsb_correlator_from_distribution(const double* probs, int n_max, double* out) {
  if (probs == nullptr || out == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() {
    if (n_max < 0) throw gbs::ParameterError("n_max must be >= 0");
    gbs::JointPhotonDistribution dist;
    dist.max_photon = n_max;
    const int d = n_max + 1;
    dist.probabilities.resize(d, d);
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) dist.probabilities(a, b) = probs[a * d + b];
    }
    dist.captured_mass = dist.probabilities.sum();
    *out = gbs::correlator_from_distribution(dist);
  });
}

int gbsb_run_experiment(const char* config_json, char** summary_json) {
  if (config_json == nullptr || summary_json == nullptr) {
    return set_error(GBSB_ERR_PARAM, "null argument");
  }
  return guarded([&]() {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      throw gbs::ParameterError(std::string("invalid configuration JSON: ") + e.what());
    }
    const std::string summary = gbs::run_experiment_json(doc).dump(2) + "\n";
    char* buffer = static_cast<char*>(std::malloc(summary.size() + 1));
    if (buffer == nullptr) throw gbs::NumericalError("out of memory");
    std::memcpy(buffer, summary.c_str(), summary.size() + 1);
    *summary_json = buffer;
  });
}

void gbsb_string_free(char* s) { std::free(s); }

}  // extern "C"
