#include <cmath>

#include "doctest.h"
#include "hecke/gamma0.hpp"
#include "hecke/scattering.hpp"
#include "hecke/special.hpp"

using namespace hecke;

namespace {
const double kPi = std::acos(-1.0);

Complex entry(const Integer& level, std::size_t i, std::size_t j, Complex s) {
  return scattering_matrix(level, s).entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}
}  // namespace

TEST_CASE("scalar factor") {
  for (int t = 1; t <= 10; ++t) CHECK(std::abs(std::abs(phi_scalar({0.5, double(t)})) - 1) < 1e-8);
  CHECK(phi_scalar(0.5) == Complex(-1.0));
  // Approaching 1/2 from the right along the real axis.
  CHECK(std::abs(phi_scalar(0.5 + 1e-6) + 1.0) < 1e-4);
  const Complex expected = std::sqrt(kPi) * gamma_function(1.5) / gamma_function(2.0) * zeta(3.0) / zeta(4.0);
  CHECK(std::abs(phi_scalar(2.0) - expected) < 1e-14);
}

TEST_CASE("p entries") {
  CHECK(std::abs(p_entry(6, 1, 1, 1.0) - 1.0 / 12) < 1e-15);
  for (long level : {6L, 10L, 15L}) {
    for (const auto& wi : divisors(level)) {
      for (const auto& wj : divisors(level)) CHECK(p_entry(level, wi, wj, 2.0) == p_entry(level, wj, wi, 2.0));
    }
  }
  CHECK_THROWS_AS(p_entry(12, 1, 1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(p_entry(6, 4, 1, 2.0), std::invalid_argument);
  const double h = 1e-6;
  for (const Complex s : {Complex(0.5, 2), Complex(2, 1)}) {
    for (const auto& wi : divisors(30)) {
      for (const auto& wj : divisors(30)) {
        const Complex fd = (p_entry(30, wi, wj, s + h) - p_entry(30, wi, wj, s - h)) / (2 * h);
        CHECK(std::abs(p_entry_derivative(30, wi, wj, s) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("matrix symmetry and values at one half") {
  CHECK(scattering_matrix(1, 2.0).entries.rows() == 1);
  CHECK(std::abs(entry(1, 0, 0, 2.0) - phi_scalar(2.0)) < 1e-15);
  for (long level = 1; level <= 30; ++level) {
    if (!is_squarefree(level)) continue;
    const auto half = scattering_matrix(level, 0.5);
    Complex trace = 0;
    for (Eigen::Index i = 0; i < half.entries.rows(); ++i) {
      REQUIRE(std::abs(half.entries(i, i) + 1.0) < 1e-12);
      trace += half.entries(i, i);
    }
    REQUIRE(std::abs(trace + to_double(cusp_count(level))) < 1e-10);
    const auto m = scattering_matrix(level, {0.5, 3});
    REQUIRE((m.entries - m.entries.transpose()).norm() == 0.0);
  }
  CHECK_THROWS_AS(scattering_matrix(18, 2.0), std::invalid_argument);
}

TEST_CASE("unitary on the critical line") {
  for (long level : {2L, 3L, 6L}) {
    for (double t : {1.0, 2.0}) {
      const auto m = scattering_matrix(level, {0.5, t});
      const Eigen::MatrixXcd prod = m.entries * m.entries.adjoint();
      CHECK((prod - Eigen::MatrixXcd::Identity(prod.rows(), prod.cols())).norm() < 1e-6);
    }
  }
}

TEST_CASE("log derivative of the scalar factor") {
  const double h = 1e-5;
  for (double t : {1.0, 5.0, 0.3, 12.0}) {
    const Complex s(0.5, t);
    const Complex fd = (phi_scalar(s + h) - phi_scalar(s - h)) / (2 * h) / phi_scalar(s);
    const Complex ld = phi_log_derivative(s);
    CHECK(std::abs(ld - fd) < 1e-6);
    CHECK(std::abs(ld.imag()) < 1e-8);
  }
  CHECK_THROWS_AS(phi_log_derivative({0.6, 1}), std::domain_error);
  CHECK_THROWS_AS(phi_log_derivative({0.5, 1e-10}), std::domain_error);
}

TEST_CASE("entry log combination") {
  const double h = 1e-5;
  CHECK(std::abs(entry_log_combination(1, 0, 0, {0.5, 2}) - phi_log_derivative({0.5, 2})) < 1e-14);
  const Complex s(0.5, 1);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex derivative = (entry(6, i, j, s + h) - entry(6, i, j, s - h)) / (2 * h);
      const Complex fd = derivative * entry(6, i, j, 1.0 - s);
      CHECK(std::abs(entry_log_combination(6, i, j, s) - fd) < 1e-6);
    }
  }
  // Each entry depends only on its pair of cusps, so any relabelling of
  // the cusps permutes the table.
  const auto cusps = enumerate_cusps(30);
  const Complex t(0.5, 2);
  for (std::size_t i = 0; i < cusps.size(); ++i) {
    for (std::size_t j = 0; j < cusps.size(); ++j) {
      const Complex p = p_entry(30, cusps[i].w, cusps[j].w, t);
      const Complex expected = phi_log_derivative(t) * std::norm(p) +
                               p_entry_derivative(30, cusps[i].w, cusps[j].w, t) *
                                   p_entry(30, cusps[i].w, cusps[j].w, std::conj(t));
      CHECK(std::abs(entry_log_combination(30, i, j, t) - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
    }
  }
  CHECK_THROWS_AS(entry_log_combination(6, 4, 0, {0.5, 1}), std::out_of_range);
}
