// Command-line front end: distances with certificates, visualization,
// equivalence checks and the triangle-family demo.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "skorokhod.hpp"

namespace sk = skorokhod;

namespace {

enum Exit : int { ok = 0, not_equivalent = 1, parse = 2, precondition = 3, io = 4, unknown = 5 };

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) { return sk::detail::fmt(v); }

void print_certificate(const sk::DistanceCertificate& c) {
  std::cout << "lower " << num(c.lower) << " upper " << num(c.upper) << " exact " << (c.exact ? "true" : "false")
            << "\n";
  std::cout << "grid_resolution " << num(c.grid_resolution) << "\n";
  std::cout << "witness " << c.witness.size() << "\n";
  for (const auto& n : c.witness.nodes()) std::cout << num(n.t) << " " << num(n.s) << "\n";
}

int cmd_rho(const std::string& a, const std::string& b, double tol, bool exact) {
  const auto f = sk::as_function(sk::load_document(a));
  const auto g = sk::as_function(sk::load_document(b));
  const bool steps = f.is_step() && g.is_step();
  if (exact && !steps) throw PreconditionError("--exact requires two step functions");
  print_certificate(steps ? sk::rho_step_exact(f, g) : sk::rho_bounds(f, g, tol));
  return ok;
}

int cmd_rho_plus(const std::string& a, const std::string& b, double tol) {
  const auto x = sk::as_turbo(sk::load_document(a));
  const auto y = sk::as_turbo(sk::load_document(b));
  print_certificate(sk::rho_plus_bounds(x, y, tol));
  return ok;
}

int cmd_visualize(const std::string& a, const std::string& svg, const std::string& csv) {
  const auto doc = sk::load_document(a);
  const auto x = sk::as_turbo(doc);
  if (!svg.empty()) sk::write_text_file(svg, sk::visualization_svg(x, doc.name));
  if (!csv.empty()) sk::write_text_file(csv, sk::visualization_csv(x));
  const auto inst = sk::instantons(x);
  std::cout << "instantons " << inst.size() << "\n";
  for (const auto& i : inst) {
    std::cout << "s " << num(i.s) << " t " << num(i.t_begin) << " " << num(i.t_end) << " range "
              << num(i.value_min) << " " << num(i.value_max) << "\n";
  }
  if (svg.empty() && csv.empty()) std::cout << sk::visualization_csv(x);
  return ok;
}

int cmd_equiv(const std::string& a, const std::string& b) {
  const auto x = sk::as_turbo(sk::load_document(a));
  const auto y = sk::as_turbo(sk::load_document(b));
  const auto r = sk::is_equivalent(x, y);
  std::cout << sk::to_string(r.decision) << "\n";
  if (r.canonical_match) {
    std::cout << "evidence canonical forms agree within 1e-9\n";
  } else {
    std::cout << "evidence rho_plus lower " << num(r.lower) << " upper " << num(r.upper) << "\n";
    const auto cx = sk::canonicalize(x), cy = sk::canonicalize(y);
    std::cout << "canonical F nodes " << cx.F().size() << " vs " << cy.F().size() << ", sigma nodes "
              << cx.sigma().size() << " vs " << cy.sigma().size() << "\n";
  }
  switch (r.decision) {
    case sk::Equivalence::equivalent: return ok;
    case sk::Equivalence::not_equivalent: return not_equivalent;
    case sk::Equivalence::unknown: return unknown;
  }
  return unknown;
}

std::string theta_name(double t) {
  std::ostringstream s;
  s << t;
  return s.str();
}

int cmd_demo_triangle(const std::vector<double>& thetas, double tol, std::string outdir) {
  if (thetas.empty()) throw PreconditionError("--theta-list must not be empty");
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (!(thetas[i] > 2.0)) throw PreconditionError("every theta must be greater than 2");
    if (i > 0 && !(thetas[i] > thetas[i - 1])) throw PreconditionError("theta values must be increasing");
  }
  if (outdir.empty()) {
    const char* env = std::getenv("SKOROKHOD_OUTDIR");
    outdir = env ? env : "skorokhod_demo";
  }
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec) throw sk::IoError("cannot create output directory '" + outdir + "'");
  const auto path = [&](const char* f) { return (std::filesystem::path(outdir) / f).string(); };

  bool all_ok = true;
  std::string pairs = "theta1,theta2,lower,upper,bound,holds\n";
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = i + 1; j < thetas.size(); ++j) {
      const auto c = sk::rho_bounds(sk::g_theta_family(thetas[i]), sk::g_theta_family(thetas[j]), tol);
      const double bound = std::abs(1.0 / thetas[i] - 1.0 / thetas[j]);
      const bool holds = c.upper <= bound + tol;
      all_ok = all_ok && holds;
      pairs += num(thetas[i]) + "," + num(thetas[j]) + "," + num(c.lower) + "," + num(c.upper) + "," + num(bound) +
               "," + (holds ? "true" : "false") + "\n";
    }
  }
  sk::write_text_file(path("pairs.csv"), pairs);

  std::string limit_rows = "theta,lower,upper,bound,holds\n";
  std::vector<sk::Turbofunction> items;
  for (double t : thetas) {
    items.push_back(sk::embed(sk::g_theta_family(t)));
    const auto c = sk::rho_plus_bounds(items.back(), sk::paper_limit(), tol);
    const bool holds = c.upper <= 1.0 / t + tol;
    all_ok = all_ok && holds;
    limit_rows += num(t) + "," + num(c.lower) + "," + num(c.upper) + "," + num(1.0 / t) + "," +
                  (holds ? "true" : "false") + "\n";
  }
  sk::write_text_file(path("limit_bounds.csv"), limit_rows);

  const sk::CauchySequence seq(items, tol);
  const double last_gap = seq.gap_bounds().empty() ? 0.0 : seq.gap_bounds().back();
  const double cauchy_tol = std::max(2.0 * last_gap, tol);
  const auto rep = sk::cauchy_limit(seq, cauchy_tol);
  const auto to_limit = sk::rho_plus_bounds(rep.limit, sk::paper_limit(), tol);
  const double limit_bound = 1.0 / thetas.back() + rep.residual + tol;
  const bool limit_ok = to_limit.upper <= limit_bound;
  all_ok = all_ok && limit_ok && rep.continuous;
  std::ostringstream report;
  report << "cauchy_tol " << num(cauchy_tol) << "\nresidual " << num(rep.residual) << "\nlevels_used "
         << rep.levels_used << "\ncontinuous " << (rep.continuous ? "true" : "false") << "\nsubsequence";
  for (auto n : rep.subsequence) report << " " << n;
  report << "\nrho_plus_to_limit lower " << num(to_limit.lower) << " upper " << num(to_limit.upper)
         << " bound " << num(limit_bound) << " holds " << (limit_ok ? "true" : "false") << "\n";
  sk::write_text_file(path("cauchy_limit.txt"), report.str());
  sk::save_document(path("limit.txt"), sk::Document::turbo(rep.limit, "cauchy_limit"));

  const std::vector<double> s_grid{0.1, 0.25, 0.4, 0.5, 0.75, 1.0};
  std::string pw = "s,class,tail_max,converges\n";
  for (const auto& r : sk::pointwise_check(seq, sk::paper_limit(), s_grid)) {
    pw += num(r.s) + "," + sk::to_string(r.cls) + "," + num(r.tail_max) + "," +
          (r.cls == sk::PointClass::exceptional ? "n/a" : (r.converges ? "true" : "false")) + "\n";
  }
  sk::write_text_file(path("pointwise.csv"), pw);

  std::vector<sk::SvgSeries> overlay;
  static const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    overlay.push_back({"g_" + theta_name(thetas[i]), sk::g_theta_family(thetas[i]), colors[i % 7]});
  }
  sk::write_text_file(path("g_theta_overlay.svg"), sk::svg_plot(overlay, {}, "triangle family"));
  sk::write_text_file(path("limit.svg"), sk::visualization_svg(sk::paper_limit(), "turbofunction limit"));
  sk::write_text_file(path("cauchy_limit.svg"), sk::visualization_svg(rep.limit, "constructed limit"));

  std::cout << "pairs " << thetas.size() * (thetas.size() - 1) / 2 << "\nresidual " << num(rep.residual)
            << "\nrho_plus_to_limit upper " << num(to_limit.upper) << "\nall_bounds_hold "
            << (all_ok ? "true" : "false") << "\n";
  return all_ok ? ok : precondition;
}

int cmd_emit(const std::string& what, double theta, const std::string& out) {
  sk::Document d;
  const auto one = sk::CadlagFunction::constant(1.0);
  if (what == "g-theta") {
    d = sk::Document::function(sk::g_theta_family(theta), "g_" + theta_name(theta));
  } else if (what == "turbo-theta") {
    d = sk::Document::turbo({sk::g_theta_family(4.0), sk::sigma_theta_family(theta)}, "g4_sigma_" + theta_name(theta));
  } else if (what == "sigma-theta") {
    d = {sk::DocumentKind::timechange, "sigma_" + theta_name(theta), sk::sigma_theta_family(theta)};
  } else if (what == "limit") {
    d = sk::Document::turbo(sk::paper_limit(), "limit");
  } else if (what == "constant-one") {
    d = sk::Document::turbo(sk::embed(one), "constant_one");
  } else if (what == "constant-one-flat") {
    d = sk::Document::turbo({one, sk::sigma_limit()}, "constant_one_flat");
  } else if (what == "zero") {
    d = sk::Document::function(sk::CadlagFunction::constant(0.0), "zero");
  } else {
    throw PreconditionError("unknown sample '" + what + "'");
  }
  const auto text = sk::format_document(d);
  if (out.empty()) {
    std::cout << text;
  } else {
    sk::write_text_file(out, text);
  }
  return ok;
}

std::vector<double> parse_theta_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw sk::ParseError(1, "--theta-list", "not a number: '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skorokhod distances, turbofunctions and their visualization"};
  app.require_subcommand(1);
  std::string a, b, svg, csv, outdir, theta_list = "4,8,16,32,64", sample, out;
  double tol = 1e-6, theta = 8.0;
  bool exact = false;

  auto* rho = app.add_subcommand("rho", "Skorokhod distance between two functions");
  rho->add_option("f", a, "first function document")->required();
  rho->add_option("g", b, "second function document")->required();
  rho->add_option("--tol", tol, "target gap between bounds")->capture_default_str();
  rho->add_flag("--exact", exact, "require step functions and the exact solver");

  auto* rp = app.add_subcommand("rho-plus", "distance between two turbofunctions");
  rp->add_option("x", a, "first turbo document")->required();
  rp->add_option("y", b, "second turbo document")->required();
  rp->add_option("--tol", tol, "target gap between bounds")->capture_default_str();

  auto* vis = app.add_subcommand("visualize", "visualization and instantons of a turbofunction");
  vis->add_option("x", a, "turbo document")->required();
  vis->add_option("--svg", svg, "write an SVG drawing");
  vis->add_option("--csv", csv, "write (s, value) rows");

  auto* demo = app.add_subcommand("demo-triangle", "triangle family and its turbofunction limit");
  demo->add_option("--theta-list", theta_list, "comma-separated increasing theta values")->capture_default_str();
  demo->add_option("--tol", tol, "tolerance of all bounds")->capture_default_str();
  demo->add_option("--outdir", outdir, "output directory (default: $SKOROKHOD_OUTDIR)");

  auto* eq = app.add_subcommand("equiv", "decide equivalence of two turbofunctions");
  eq->add_option("x", a, "first turbo document")->required();
  eq->add_option("y", b, "second turbo document")->required();

  auto* emit = app.add_subcommand("emit", "write a sample document");
  emit->add_option("sample", sample,
                   "g-theta | turbo-theta | sigma-theta | limit | constant-one | constant-one-flat | zero")
      ->required();
  emit->add_option("--theta", theta, "theta for the family samples")->capture_default_str();
  emit->add_option("--out", out, "output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : parse;
  }

  try {
    if (*rho) return cmd_rho(a, b, tol, exact);
    if (*rp) return cmd_rho_plus(a, b, tol);
    if (*vis) return cmd_visualize(a, svg, csv);
    if (*demo) return cmd_demo_triangle(parse_theta_list(theta_list), tol, outdir);
    if (*eq) return cmd_equiv(a, b);
    if (*emit) return cmd_emit(sample, theta, out);
  } catch (const sk::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return parse;
  } catch (const sk::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return io;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return precondition;
  } catch (const sk::DomainError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return precondition;
  } catch (const sk::RefusalError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return precondition;
  }
  return ok;
}
