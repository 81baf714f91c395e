// torsionscope: build Rips/Cech filtrations from point clouds, compute exact
// integer and field homology, locate bad primes, and compare persistence
// barcodes across coefficient fields. All inputs and outputs are JSON files;
// see README.md for the schemas.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "torsionscope/torsionscope.hpp"

namespace {

using torsionscope::io::Json;

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << torsionscope::io::dump(j);
  } else {
    torsionscope::io::write_file(out_path, j);
  }
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw torsionscope::IoError("cannot open for writing: " + out_path);
    out << text;
  }
}

int resolve_max_dim(std::optional<int> max_dim, std::optional<int> skeleton) {
  if (max_dim && skeleton) {
    throw torsionscope::DomainError("--max-dim and --skeleton are mutually exclusive");
  }
  if (skeleton) return *skeleton + 1;
  if (max_dim) return *max_dim;
  return -1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace torsionscope;

  CLI::App app{"filtration homology over exact coefficients"};
  app.require_subcommand(1);

  std::string in_path, out_path, a_path, b_path;
  std::string flavor_name = "rips", field_name = "z", persist_field = "q", dataset;
  std::optional<double> epsilon;
  std::vector<double> scales;
  std::optional<int> max_dim_opt, skeleton_opt;
  int k = 0, max_k = 1, samples = 256, grid = 4, circle_n = 12;
  std::optional<int> ambient_dim;
  std::optional<int> witness_k;
  std::uint64_t prime = 2, seed = 20240901;
  std::optional<std::uint64_t> certify, uct_prime;
  double circumference = 1.0, delta = 0.5;
  bool want_transforms = false, as_text = false, verbose = false;

  auto* build = app.add_subcommand("build", "build a complex or filtration from a cloud");
  build->add_option("--in", in_path, "point cloud JSON")->required();
  build->add_option("--flavor", flavor_name, "rips or cech")
      ->check(CLI::IsMember({"rips", "cech"}));
  build->add_option("--epsilon", epsilon, "single scale: emit a complex");
  build->add_option("--scales", scales, "scale list: emit a filtration")->delimiter(',');
  build->add_option("--max-dim", max_dim_opt, "cap simplex dimension");
  build->add_option("--skeleton", skeleton_opt,
                    "build dimension k+1, enough for homology up to degree k");
  build->add_option("--out", out_path, "output path (default stdout)");

  auto* homology = app.add_subcommand("homology", "homology of a complex file");
  homology->add_option("--in", in_path, "complex JSON")->required();
  homology->add_option("--k", k, "degree")->required();
  homology->add_option("--field", field_name, "z (integer), q, or zp")
      ->check(CLI::IsMember({"z", "q", "zp"}));
  homology->add_option("--prime", prime, "modulus for --field zp");
  homology->add_option("--uct-prime", uct_prime,
                       "also emit the universal-coefficient consistency report");
  homology->add_option("--out", out_path, "output path (default stdout)");

  auto* snf = app.add_subcommand("snf", "Smith Normal Form of an integer matrix");
  snf->add_option("--in", in_path, "matrix JSON")->required();
  snf->add_flag("--transforms", want_transforms, "include unimodular U and V");
  snf->add_option("--out", out_path, "output path (default stdout)");

  auto* primes = app.add_subcommand("primes", "bad primes of a filtration");
  primes->add_option("--in", in_path, "filtration JSON")->required();
  primes->add_option("--max-k", max_k, "highest homology degree")->required();
  primes->add_option("--certify", certify, "certify one prime instead of reporting");
  primes->add_option("--out", out_path, "output path (default stdout)");

  auto* persist = app.add_subcommand("persist", "persistence barcode of a filtration");
  persist->add_option("--in", in_path, "filtration JSON")->required();
  persist->add_option("--field", persist_field, "q or zp")
      ->check(CLI::IsMember({"q", "zp"}));
  persist->add_option("--prime", prime, "modulus for --field zp");
  persist->add_option("--max-k", max_k, "highest degree in the barcode")->required();
  persist->add_flag("--text", as_text, "plain text, one interval per line");
  persist->add_flag("--verbose", verbose, "include zero-length diagnostics");
  persist->add_option("--out", out_path, "output path (default stdout)");

  auto* compare = app.add_subcommand("compare", "diff two barcodes (exit 3 when unequal)");
  compare->add_option("--a", a_path, "first barcode JSON")->required();
  compare->add_option("--b", b_path, "second barcode JSON")->required();
  compare->add_option("--out", out_path, "output path (default stdout)");

  auto* obstruct = app.add_subcommand(
      "obstruct", "empty-simplex witnesses, representability, Helly vanishing");
  obstruct->add_option("--in", in_path, "complex or filtration JSON")->required();
  obstruct->add_option("--ambient-dim", ambient_dim, "ambient dimension n");
  obstruct->add_option("--max-k", max_k, "highest degree for the vanishing check");
  obstruct->add_option("--k", witness_k, "list witnesses of one dimension only");
  obstruct->add_option("--out", out_path, "output path (default stdout)");

  bool simplexwise = false;
  auto* generate = app.add_subcommand("generate", "reference datasets");
  generate
      ->add_option("--dataset", dataset,
                   "rp2-triangulation | klein-triangulation | circle | rp2-dense | klein-grid")
      ->required()
      ->check(CLI::IsMember({"rp2-triangulation", "klein-triangulation", "circle",
                             "rp2-dense", "klein-grid"}));
  generate->add_option("--n", circle_n, "circle: number of points");
  generate->add_option("--circumference", circumference, "circle: total length");
  generate->add_option("--delta", delta, "rp2-dense: density target");
  generate->add_option("--grid", grid, "klein-grid: lattice size");
  generate->add_flag("--simplexwise", simplexwise,
                     "triangulations: emit the one-simplex-at-a-time filtration");
  generate->add_option("--out", out_path, "output path (default stdout)");

  auto* axioms = app.add_subcommand("axioms", "sampled Minkowski-norm axiom check");
  axioms->add_option("--in", in_path, "point cloud JSON (its metric is checked)")->required();
  axioms->add_option("--samples", samples, "sample count");
  axioms->add_option("--seed", seed, "RNG seed");
  axioms->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json err{{"error", {{"type", "usage"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(build)) {
      auto cloud = io::cloud_from_json(io::read_file(in_path));
      const Flavor flavor = flavor_name == "cech" ? Flavor::cech : Flavor::rips;
      const int max_dim = resolve_max_dim(max_dim_opt, skeleton_opt);
      if (epsilon.has_value() == !scales.empty()) {
        throw DomainError("build needs exactly one of --epsilon or --scales");
      }
      if (epsilon) {
        auto complex = flavor == Flavor::cech ? build_cech(cloud, *epsilon, max_dim)
                                              : build_rips(cloud, *epsilon, max_dim);
        emit(io::complex_to_json(complex), out_path);
      } else {
        auto filtration = build_filtration(cloud, scales, max_dim, flavor);
        emit(io::filtration_to_json(filtration), out_path);
      }
    } else if (app.got_subcommand(homology)) {
      auto complex = io::complex_from_json(io::read_file(in_path));
      if (uct_prime) {
        auto r = uct_check(complex, k, *uct_prime);
        Json j;
        j["format_version"] = io::kFormatVersion;
        j["k"] = r.k;
        j["prime"] = r.p;
        j["zp_dim"] = r.zp_dim;
        j["betti"] = r.betti;
        j["torsion_k"] = r.torsion_k;
        j["torsion_km1"] = r.torsion_km1;
        j["consistent"] = r.consistent;
        emit(j, out_path);
      } else if (field_name == "z") {
        emit(io::homology_to_json(k, integer_homology(complex, k)), out_path);
      } else {
        const FieldSpec field = field_name == "q" ? FieldSpec::rationals()
                                                  : FieldSpec::prime_field(prime);
        Json j;
        j["format_version"] = io::kFormatVersion;
        j["k"] = k;
        j["field"] = field_name;
        if (field_name == "zp") j["prime"] = prime;
        j["betti"] = field_homology(complex, k, field);
        emit(j, out_path);
      }
    } else if (app.got_subcommand(snf)) {
      auto a = io::matrix_from_json(io::read_file(in_path));
      emit(io::snf_to_json(smith_normal_form(a, want_transforms)), out_path);
    } else if (app.got_subcommand(primes)) {
      auto filtration = io::filtration_from_json(io::read_file(in_path));
      if (certify) {
        emit(io::certificate_to_json(certify_good_prime(filtration, *certify, max_k)),
             out_path);
      } else {
        emit(io::prime_report_to_json(bad_primes_for_filtration(filtration, max_k)),
             out_path);
      }
    } else if (app.got_subcommand(persist)) {
      auto filtration = io::filtration_from_json(io::read_file(in_path));
      const FieldSpec field = persist_field == "q" ? FieldSpec::rationals()
                                                   : FieldSpec::prime_field(prime);
      auto barcode = persistent_homology(filtration, field, max_k);
      if (as_text) {
        emit_text(io::barcode_to_text(barcode), out_path);
      } else {
        emit(io::barcode_to_json(barcode, verbose), out_path);
      }
    } else if (app.got_subcommand(compare)) {
      auto a = io::barcode_from_json(io::read_file(a_path));
      auto b = io::barcode_from_json(io::read_file(b_path));
      auto diff = compare_barcodes(a, b);
      emit(io::diff_to_json(diff), out_path);
      return diff.empty() ? 0 : 3;
    } else if (app.got_subcommand(obstruct)) {
      auto doc = io::read_file(in_path);
      if (doc.is_object() && doc.contains("births")) {
        if (!ambient_dim) {
          throw DomainError("obstruct on a filtration needs --ambient-dim");
        }
        auto filtration = io::filtration_from_json(doc);
        emit(io::vanishing_to_json(verify_vanishing(filtration, *ambient_dim, max_k)),
             out_path);
      } else {
        auto complex = io::complex_from_json(doc);
        if (witness_k) {
          auto ws = find_empty_simplices(complex, *witness_k);
          Json j;
          j["format_version"] = io::kFormatVersion;
          j["k"] = *witness_k;
          j["witnesses"] = io::witnesses_to_json(ws);
          emit(j, out_path);
        } else if (ambient_dim) {
          emit(io::capture_to_json(capture_obstruction(complex, *ambient_dim)), out_path);
        } else {
          emit(io::representability_to_json(rips_representability(complex)), out_path);
        }
      }
    } else if (app.got_subcommand(generate)) {
      if (dataset == "rp2-triangulation" || dataset == "klein-triangulation") {
        auto rc = dataset == "rp2-triangulation" ? rp2_triangulation() : klein_triangulation();
        if (simplexwise) {
          emit(io::filtration_to_json(simplexwise_filtration(rc.complex)), out_path);
        } else {
          emit(io::complex_to_json(rc.complex), out_path);
        }
      } else if (simplexwise) {
        throw DomainError("--simplexwise applies to the triangulation datasets");
      } else if (dataset == "circle") {
        emit(io::cloud_to_json(circle_sample(circle_n, circumference)), out_path);
      } else if (dataset == "rp2-dense") {
        emit(io::cloud_to_json(rp2_dense_sample(delta)), out_path);
      } else {
        emit(io::cloud_to_json(klein_sample(grid)), out_path);
      }
    } else if (app.got_subcommand(axioms)) {
      auto cloud = io::cloud_from_json(io::read_file(in_path));
      auto report = check_norm_axioms(cloud.metric(), samples, seed,
                                      static_cast<int>(cloud.dimension()));
      emit(io::axiom_report_to_json(report), out_path);
    }
  } catch (const DomainError& e) {
    Json err{{"error", {{"type", "domain"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const IoError& e) {
    Json err{{"error", {{"type", "io"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
