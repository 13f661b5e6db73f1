#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "voa/autgroup.hpp"
#include "voa/bform.hpp"
#include "voa/conformal.hpp"
#include "voa/modes.hpp"
#include "voa/textio.hpp"

using nlohmann::json;

namespace {

struct Cli {
  int rank = 1;
  std::string level = "1";
  int max_degree = 6;
  std::string out;

  voa::AlgebraConfig config() const {
    voa::AlgebraConfig cfg{rank, voa::rat_parse(level), max_degree};
    cfg.validate();
    return cfg;
  }

  json base_report(const std::string& command) const {
    json j;
    j["command"] = command;
    j["config"] = {{"rank", rank}, {"level", level}, {"max_degree", max_degree}};
    return j;
  }

  void emit(json report, std::chrono::steady_clock::time_point start) const {
    auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    report["elapsed_ms"] = elapsed.count();
    std::string text = report.dump(2);
    if (out.empty()) {
      std::cout << text << "\n";
    } else {
      std::ofstream f(out);
      if (!f) throw voa::ConfigError("cannot open output file: " + out);
      f << text << "\n";
      std::cout << "report written to " << out << "\n";
    }
  }
};

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw voa::ConfigError("cannot open file: " + path);
  json j;
  f >> j;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact kernel for conformal vectors and vertex algebra automorphisms on "
               "truncated free-boson Fock spaces"};
  app.require_subcommand(1);

  Cli cli;
  app.add_option("--rank", cli.rank, "number of boson colors")->capture_default_str();
  app.add_option("--level", cli.level, "level kappa as p/q")->capture_default_str();
  app.add_option("--max-degree", cli.max_degree, "truncation degree N >= 4")
      ->capture_default_str();
  app.add_option("--out", cli.out, "write the JSON report to this file");

  // verify-axioms
  auto* cmd_axioms = app.add_subcommand("verify-axioms", "vacuum/translation/skew/Borcherds scan");
  voa::AxiomScanParams scan;
  cmd_axioms->add_option("--state-degree", scan.state_degree, "scan states up to this degree")
      ->capture_default_str();
  cmd_axioms->add_option("--pair-degree", scan.pair_degree, "exhaustive pair degree")
      ->capture_default_str();
  cmd_axioms->add_option("--triple-degree", scan.triple_degree, "exhaustive triple degree")
      ->capture_default_str();
  cmd_axioms->add_option("--index-min", scan.index_min, "lowest mode index")->capture_default_str();
  cmd_axioms->add_option("--index-max", scan.index_max, "highest mode index")
      ->capture_default_str();
  cmd_axioms->add_option("--random-pairs", scan.random_pairs, "random skew pairs")
      ->capture_default_str();
  cmd_axioms->add_option("--random-triples", scan.random_triples, "random Borcherds triples")
      ->capture_default_str();
  cmd_axioms->add_option("--seed", scan.seed, "RNG seed")->capture_default_str();

  // check-conformal
  auto* cmd_conf = app.add_subcommand("check-conformal", "full conformal-vector report");
  std::string conf_vector;
  cmd_conf->add_option("vector", conf_vector, "vector literal, e.g. \"w + 1/2*T(h1)\"")
      ->required();

  // classify-v2
  auto* cmd_classify = app.add_subcommand("classify-v2", "orbit table for V_2 conformal vectors");
  std::vector<std::string> classify_vectors;
  std::vector<std::string> classify_s;
  cmd_classify->add_option("vectors", classify_vectors, "vector literals in V_2");
  cmd_classify->add_option("--s", classify_s, "shorthand: s values building w + s*T(h1)");

  // decompose
  auto* cmd_dec = app.add_subcommand("decompose", "factor an automorphism as g h k");
  std::string endo_path;
  std::string factors_out;
  cmd_dec->add_option("endo", endo_path, "JSON file holding the endomorphism")->required();
  cmd_dec->add_option("--factors-out", factors_out,
                      "write g/h/k to <prefix>.g.json, .h.json, .k.json");

  // conjugate
  auto* cmd_conj = app.add_subcommand("conjugate", "witness carrying omega to a strong-CFT vector");
  std::string conj_vector;
  std::string witness_out;
  cmd_conj->add_option("vector", conj_vector, "vector literal")->required();
  cmd_conj->add_option("--witness-out", witness_out, "write the witness endo to this file");

  // mode
  auto* cmd_mode = app.add_subcommand("mode", "evaluate a(n)b");
  std::string mode_a, mode_b;
  int mode_n = 0;
  cmd_mode->add_option("--a", mode_a, "left vector literal")->required();
  cmd_mode->add_option("-n", mode_n, "mode index")->required();
  cmd_mode->add_option("--b", mode_b, "right vector literal")->required();

  // gram
  auto* cmd_gram = app.add_subcommand("gram", "exact Gram matrix of the invariant pairing");
  int gram_degree = 1;
  cmd_gram->add_option("--degree", gram_degree, "degree n")->required();

  CLI11_PARSE(app, argc, argv);

  auto start = std::chrono::steady_clock::now();
  try {
    voa::AlgebraConfig cfg = cli.config();

    if (cmd_axioms->parsed()) {
      voa::AxiomReport rep = voa::verify_axioms(cfg, scan);
      json j = cli.base_report("verify-axioms");
      j["ok"] = rep.ok;
      j["vacuum_checked"] = rep.vacuum_checked;
      j["translation_checked"] = rep.translation_checked;
      j["skew_checked"] = rep.skew_checked;
      j["borcherds_checked"] = rep.borcherds_checked;
      j["failures"] = rep.failures;
      cli.emit(j, start);
      return rep.ok ? 0 : 2;
    }

    voa::ModeEngine eng(cfg);

    if (cmd_conf->parsed()) {
      voa::GradedVector a = voa::parse_vector(eng, conf_vector);
      voa::ConformalReport rep = voa::conformal_report(eng, a);
      json j = cli.base_report("check-conformal");
      j["vector"] = voa::vector_to_string(a);
      j["report"] = voa::conformal_report_to_json(rep);
      cli.emit(j, start);
      return 0;
    }

    if (cmd_classify->parsed()) {
      std::vector<voa::GradedVector> samples;
      std::vector<std::string> echo;
      for (const std::string& text : classify_vectors) {
        samples.push_back(voa::parse_vector(eng, text));
        echo.push_back(voa::vector_to_string(samples.back()));
      }
      for (const std::string& sval : classify_s) {
        voa::GradedVector a = eng.algebra().omega();
        voa::GradedVector th = eng.translate(eng.algebra().current(1));
        th *= voa::rat_parse(sval);
        a += th;
        samples.push_back(a);
        echo.push_back(voa::vector_to_string(a));
      }
      if (samples.empty()) throw voa::ConfigError("classify-v2 needs vectors or --s values");
      voa::OrbitReport rep = voa::classify_v2(eng, samples);
      json j = cli.base_report("classify-v2");
      j["samples"] = echo;
      j["orbits"] = voa::orbit_report_to_json(rep, eng.algebra());
      j["trust_degree"] = eng.max_degree();
      cli.emit(j, start);
      return 0;
    }

    if (cmd_dec->parsed()) {
      voa::Endo f = voa::endo_from_json(eng.algebra(), load_json(endo_path));
      voa::Decomposition d = voa::decompose(eng, f);
      json j = cli.base_report("decompose");
      auto summary = [&](const voa::Endo& e) {
        auto [lo, hi] = e.shift_profile();
        voa::MembershipReport m = voa::membership(eng, e);
        return json{{"shift_profile", {lo, hi}},
                    {"blocks", e.blocks().size()},
                    {"membership", voa::membership_to_json(m)}};
      };
      j["g"] = summary(d.g);
      j["h"] = summary(d.h);
      j["k"] = summary(d.k);
      j["trust_degree"] = std::min({d.g.trust_degree(), d.h.trust_degree(), d.k.trust_degree()});
      if (!factors_out.empty()) {
        for (auto& [suffix, endo] :
             std::vector<std::pair<std::string, const voa::Endo*>>{
                 {"g", &d.g}, {"h", &d.h}, {"k", &d.k}}) {
          std::ofstream f2(factors_out + "." + suffix + ".json");
          f2 << voa::endo_to_json(*endo).dump(2) << "\n";
        }
      }
      cli.emit(j, start);
      return 0;
    }

    if (cmd_conj->parsed()) {
      voa::GradedVector a = voa::parse_vector(eng, conj_vector);
      voa::Endo f = voa::conjugate_to_omega(eng, a);
      json j = cli.base_report("conjugate");
      j["vector"] = voa::vector_to_string(a);
      auto [lo, hi] = f.shift_profile();
      j["witness_shift_profile"] = {lo, hi};
      j["witness_blocks"] = f.blocks().size();
      j["trust_degree"] = f.trust_degree();
      if (!witness_out.empty()) {
        std::ofstream wf(witness_out);
        if (!wf) throw voa::ConfigError("cannot open witness file: " + witness_out);
        wf << voa::endo_to_json(f).dump(2) << "\n";
        j["witness_file"] = witness_out;
      } else {
        j["witness"] = voa::endo_to_json(f);
      }
      cli.emit(j, start);
      return 0;
    }

    if (cmd_mode->parsed()) {
      voa::GradedVector a = voa::parse_vector(eng, mode_a);
      voa::GradedVector b = voa::parse_vector(eng, mode_b);
      voa::GradedVector r = eng.mode(a, mode_n, b);
      json j = cli.base_report("mode");
      j["a"] = voa::vector_to_string(a);
      j["n"] = mode_n;
      j["b"] = voa::vector_to_string(b);
      j["result"] = voa::vector_to_string(r);
      j["result_json"] = voa::vector_to_json(r);
      j["trust_degree"] = eng.max_degree();
      cli.emit(j, start);
      return 0;
    }

    if (cmd_gram->parsed()) {
      if (gram_degree < 0 || gram_degree > cfg.max_degree)
        throw voa::ConfigError("gram degree outside [0, maxDegree]");
      voa::QMat g = voa::gram(eng, gram_degree);
      json j = cli.base_report("gram");
      j["degree"] = gram_degree;
      j["gram"] = voa::qmat_to_json(g);
      voa::LdlReport ldl = voa::ldl_positivity(g);
      j["positive_definite"] = ldl.positive_definite;
      j["trust_degree"] = eng.max_degree();
      cli.emit(j, start);
      return 0;
    }
  } catch (const voa::NotAutomorphism& e) {
    std::cerr << "not an automorphism: " << e.what() << "\n";
    return 3;
  } catch (const voa::NotStrongCFT& e) {
    std::cerr << "not strong CFT: " << e.what() << "\n";
    return 4;
  } catch (const voa::AssertionFailed& e) {
    std::cerr << "internal assertion failed: " << e.what() << "\n";
    return 5;
  } catch (const voa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
