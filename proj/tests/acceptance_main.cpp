// Acceptance runner: executes each criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero on any failure.
#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quadtwist/galois.hpp"
#include "quadtwist/json_io.hpp"
#include "quadtwist/prop1.hpp"
#include "quadtwist/sampling.hpp"
#include "quadtwist/schwarz.hpp"
#include "quadtwist/suite.hpp"

using namespace quadtwist;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string details;
  auto start = Clock::now();
  bool ok = false;
  try {
    ok = body(details);
  } catch (const std::exception& e) {
    details = std::string("exception: ") + e.what();
  }
  double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  if (budget_seconds > 0 && elapsed > budget_seconds) {
    ok = false;
    details += " [exceeded " + std::to_string(budget_seconds) + " s budget]";
  }
  std::printf("CRITERION %d %-34s %s (%.3f s)%s%s\n", number, label.c_str(),
              ok ? "PASS" : "FAIL", elapsed, details.empty() ? "" : " -- ", details.c_str());
  if (!ok) ++failures;
}

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& cmd) {
  CommandResult result;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen((cmd + " 2>/dev/null").c_str(), "r"), pclose);
  if (!pipe) return result;
  std::array<char, 4096> buf{};
  std::string out;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe.get())) {
    out.append(buf.data(), n);
  }
  int status = pclose(pipe.release());
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.output = out;
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  std::string verify_bin = argc > 1 ? argv[1] : "";
  const Discriminant d2{Rational(2)};

  criterion(1, "involution", 1.0, [&](std::string& details) {
    PolyMap tau = build_tau(d2);
    bool structural = map_compose(tau, tau).is_identity();

    SparsePoly x = SparsePoly::variable(d2, affine_var("x"));
    SparsePoly y = SparsePoly::variable(d2, affine_var("y"));
    std::map<std::string, SparsePoly> at_11{
        {"a", SparsePoly::constant(d2, 1)}, {"b", SparsePoly::constant(d2, 1)}};
    bool spot = tau.component(0).compose(at_11) == SparsePoly::constant(d2, 1) &&
                tau.component(1).compose(at_11) == SparsePoly::constant(d2, 1) &&
                tau.component(2).compose(at_11) == y * Rational(3) - x &&
                tau.component(3).compose(at_11) == y;
    details = structural ? "tau∘tau = id; tau(1,1,x,y) = (1,1,3y-x,y)" : "tau∘tau differs";
    return structural && spot;
  });

  criterion(2, "group law and equivariance", 1.0, [&](std::string& details) {
    PolyMap mu = build_mu(d2), tau = build_tau(d2);
    CheckResult law = check_group_law(mu);
    CheckResult equi = check_equivariance(mu, tau);
    details = law.details + "; " + equi.details;
    return law.passed() && equi.passed();
  });

  criterion(3, "det M(a, b) = 1", 0, [&](std::string& details) {
    SparsePoly det = fiber_matrix(build_tau(d2), FiberOrder::yx).det();
    details = "det M(a, b) = " + det.str();
    return det == SparsePoly::constant(d2, 1);
  });

  criterion(4, "phi is a bundle automorphism", 0, [&](std::string& details) {
    PolyMap phi = build_phi(d2), phi_inv = build_phi_inverse(d2);
    SparsePoly det = fiber_matrix(phi, FiberOrder::xy).det();
    bool const_det = det.is_constant() && !det.is_zero();
    bool inverse = map_compose(phi, phi_inv).is_identity();
    auto [L, rep] = conjugate_involution(phi, build_tau(d2));
    details = "det C(a, b) = " + det.str() + "; L = [" + rep.matrix_text + "]; " + rep.shape_note;
    return const_det && inverse && rep.linear && rep.involutive;
  });

  criterion(5, "twisted form and stabilization", 5.0, [&](std::string& details) {
    std::ostringstream notes;
    for (long long alpha : {2, 3, -1}) {
      Discriminant d{Rational(alpha)};
      ActionBundle bundle = schwarz_bundle(d);
      E0Result e0 = build_E0(bundle.phi, bundle.tau);
      if (e0.structure.basis.size() != 4 || e0.structure.ambient_dim != 4) {
        details = "descent dimension wrong for alpha = " + std::to_string(alpha);
        return false;
      }
      if (!check_stabilization_symbolic(bundle.mu, bundle.tau).passed()) {
        details = "symbolic chain failed for alpha = " + std::to_string(alpha);
        return false;
      }
      std::vector<TorusPoint> lambdas;
      if (alpha == 2) lambdas.emplace_back(QuadElem(3, 2, d));
      if (alpha == -1) lambdas.emplace_back(QuadElem(Rational(3, 5), Rational(4, 5), d));
      lambdas.emplace_back(QuadElem::one(d));
      lambdas.emplace_back(-QuadElem::one(d));
      Sampler sampler(424242);
      CheckResult sampled =
          check_stabilization_sampled(bundle.mu, bundle.tau, bundle.phi, bundle.phi_inverse,
                                      e0.structure, lambdas, 100, sampler);
      if (!sampled.passed()) {
        details = "sampled stabilization failed for alpha = " + std::to_string(alpha) + ": " +
                  sampled.details;
        return false;
      }
      notes << "alpha = " << alpha << " ok; ";
    }
    details = notes.str() + "k-dim 4, K-span, chain, 100 samples each";
    return true;
  });

  criterion(6, "fixed locus of {1, -1}", 0, [&](std::string& details) {
    auto [locus, result] = fixed_locus_I(build_mu(d2), "l", {"x", "y"});
    details = result.details;
    return result.passed();
  });

  criterion(7, "bounded-degree classification", 5.0, [&](std::string& details) {
    for (std::int64_t bound = 0; bound <= 10; ++bound) {
      Prop1Setup setup = ansatz(bound);
      ProofTrace trace;
      apply_equivariance_filter(setup, trace);
      for (auto [k, l] : setup.phi_prime.survivors()) {
        if (l != k + 3) {
          details = "phi' survivor pattern broken at D = " + std::to_string(bound);
          return false;
        }
      }
      for (auto [k, l] : setup.phi_double_prime.survivors()) {
        if (l != k) {
          details = "phi'' survivor pattern broken at D = " + std::to_string(bound);
          return false;
        }
      }
      NormalizedUnknowns rq = normal_form_norm(setup, trace);
      ConstraintSystem cs = extract_involution_constraints(setup.syms, rq, trace);
      SolutionFamily family = eliminate(cs, trace);
      if (cs.syms.name(family.omega) != "b[0,0]" ||
          family.zeroed.size() != 2 * (rq.r.size() + rq.q.size() - 1)) {
        details = "family is not phi' = 0, phi'' = omega at D = " + std::to_string(bound);
        return false;
      }
      std::string why;
      if (!replay(cs, trace, family, &why)) {
        details = "replay diverged at D = " + std::to_string(bound) + ": " + why;
        return false;
      }
    }
    // Survivor pattern for all k, l <= 10 via the weights themselves.
    Prop1Setup wide = ansatz(10);
    for (std::int64_t k = 0; k <= 10; ++k) {
      for (std::int64_t l = 0; l <= 10; ++l) {
        if ((wide.phi_prime.weight(k, l) == 0) != (l == k + 3) ||
            (wide.phi_double_prime.weight(k, l) == 0) != (l == k)) {
          details = "weight pattern broken";
          return false;
        }
      }
    }

    for (const QuadElem& omega :
         {QuadElem::one(d2), -QuadElem::one(d2), QuadElem(3, 2, d2)}) {
      for (const CheckResult& r : verify_family(d2, omega)) {
        if (!r.passed()) {
          details = "family member " + omega.str() + " failed " + r.name;
          return false;
        }
      }
    }
    std::size_t involution_failures = 0, other_failures = 0;
    for (const CheckResult& r : verify_family(d2, QuadElem(1, 1, d2))) {
      if (!r.passed()) {
        (r.name.find("involution") != std::string::npos ? involution_failures
                                                        : other_failures)++;
      }
    }
    if (involution_failures != 1 || other_failures != 0) {
      details = "omega = 1 + t must fail exactly involutivity";
      return false;
    }
    details = "D = 0..10 classified; traces replay; members verified; 1 + t fails (iv)";
    return true;
  });

  criterion(8, "arithmetic kernel properties", 5.0, [&](std::string& details) {
    for (long long alpha : {2, 3, 5, -1}) {
      Discriminant d{Rational(alpha)};
      Sampler s(424242);
      for (int i = 0; i < 1000; ++i) {
        QuadElem a = s.quad(d), b = s.quad(d);
        if ((a * b).norm() != a.norm() * b.norm()) {
          details = "norm multiplicativity failed";
          return false;
        }
        if ((a + b).conjugate() != a.conjugate() + b.conjugate() ||
            (a * b).conjugate() != a.conjugate() * b.conjugate() ||
            a.conjugate().conjugate() != a) {
          details = "conjugation is not a ring involution";
          return false;
        }
        QuadElem nz = s.nonzero_quad(d);
        if (nz.norm().is_zero()) {
          details = "anisotropy failed at alpha = " + std::to_string(alpha);
          return false;
        }
      }
      Sampler st(17);
      for (int i = 0; i < 1000; ++i) {
        TorusPoint p = st.torus_point(d), q = st.torus_point(d);
        Mat2 mp = torus_matrix(p), mq = torus_matrix(q), mpq = torus_matrix(p * q);
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) {
            if (mpq[r][c] != mp[r][0] * mq[0][c] + mp[r][1] * mq[1][c]) {
              details = "torus matrix homomorphism failed";
              return false;
            }
          }
        }
      }
    }
    details = "1000-case suites over alpha in {2, 3, 5, -1}, exact";
    return true;
  });

  criterion(9, "command-line interface", 0, [&](std::string& details) {
    if (verify_bin.empty()) {
      details = "pass the verify binary path as argv[1]";
      return false;
    }
    CommandResult full = run_command(verify_bin + " --alpha 2 --no-timing");
    if (full.exit_code != 0) {
      details = "verify --alpha 2 exited " + std::to_string(full.exit_code);
      return false;
    }
    std::size_t pass_count = 0, assumption_count = 0, pos = 0;
    for (std::istringstream lines(full.output); std::getline(lines, details);) {
      if (details.rfind("CHECK ", 0) == 0) {
        if (details.find("] pass") != std::string::npos) ++pass_count;
        if (details.find("] assumption") != std::string::npos) ++assumption_count;
      }
    }
    (void)pos;
    if (pass_count < 14 || assumption_count != 2) {
      details = "expected >= 14 pass and exactly 2 assumption records, saw " +
                std::to_string(pass_count) + " / " + std::to_string(assumption_count);
      return false;
    }

    CommandResult square = run_command(verify_bin + " --alpha 9/4");
    if (square.exit_code != 2) {
      details = "verify --alpha 9/4 exited " + std::to_string(square.exit_code) +
                ", expected 2";
      return false;
    }

    std::string json_cmd = verify_bin + " --alpha 2 --format json --no-timing";
    CommandResult j1 = run_command(json_cmd);
    CommandResult j2 = run_command(json_cmd);
    if (j1.exit_code != 0 || j1.output != j2.output) {
      details = "JSON report is not byte-stable under --no-timing";
      return false;
    }
    auto parsed = nlohmann::json::parse(j1.output, nullptr, false);
    if (parsed.is_discarded()) {
      details = "JSON report failed to parse";
      return false;
    }
    details = std::to_string(pass_count) + " pass records, 2 assumptions, exit codes 0/2, "
              "byte-stable JSON";
    return true;
  });

  std::printf("%s\n", failures == 0 ? "ACCEPTANCE: all criteria passed"
                                    : "ACCEPTANCE: failures detected");
  return failures == 0 ? 0 : 1;
}
