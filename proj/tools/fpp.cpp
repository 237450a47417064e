#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fpp/verify.hpp"

namespace {

using fpp::verify::Json;
using fpp::verify::VerificationReport;

struct OutputOptions {
  bool json = false;
  bool timing = false;
  std::string out_path;
};

void emit(const OutputOptions& opts, const std::string& text, const Json& json) {
  const std::string payload = opts.json ? json.dump(2) + "\n" : text;
  if (opts.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream file(opts.out_path, std::ios::binary);
    if (!file) throw fpp::input_error("cannot open output file '" + opts.out_path + "'");
    file << payload;
  }
}

std::string nodes_str(const std::vector<int>& nodes) {
  std::string out = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(nodes[i]);
  }
  return out + "}";
}

std::string components_str(const std::vector<fpp::ComponentInfo>& components) {
  std::string out;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i) out += " x ";
    out += components[i].family + std::to_string(components[i].local_rank);
    out += nodes_str(components[i].nodes);
  }
  return out.empty() ? "(torus)" : out;
}

Json components_json(const std::vector<fpp::ComponentInfo>& components) {
  Json out = Json::array();
  for (const auto& c : components) {
    Json j;
    j["family"] = std::string(1, c.family);
    j["rank"] = c.local_rank;
    j["nodes"] = c.nodes;
    out.push_back(std::move(j));
  }
  return out;
}

struct TypeSpec {
  std::string type;
  int rank = 0;

  const fpp::RootDatum& resolve() const {
    if (type.empty()) throw fpp::input_error("--type is required");
    if (type.size() == 1) {
      if (rank <= 0) throw fpp::input_error("--rank is required with a bare family letter");
      return fpp::build_root_datum(static_cast<char>(std::toupper(type[0])), rank);
    }
    return fpp::root_datum_by_name(type);
  }
};

int reports_exit_code(const std::vector<VerificationReport>& reports) {
  for (const auto& r : reports)
    if (!r.verified()) return 1;
  return 0;
}

std::string reports_text(const std::vector<VerificationReport>& reports, bool timing) {
  std::string out;
  for (const auto& r : reports) {
    out += "[" + r.status + "] " + r.case_name;
    if (r.details.contains("count")) out += "  count=" + r.details["count"].dump();
    if (!r.verified() && r.details.contains("witnesses") && !r.details["witnesses"].empty())
      out += "  witnesses=" + std::to_string(r.details["witnesses"].size());
    if (timing) out += "  (" + std::to_string(r.elapsed_ms) + " ms)";
    out += "\n";
  }
  return out;
}

Json reports_json(const std::vector<VerificationReport>& reports, bool timing) {
  if (reports.size() == 1) return reports.front().to_json(timing);
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(r.to_json(timing));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact root-system, Weyl-group and Levi computations with parametric "
               "fundamental-parallelepiped verification"};
  app.require_subcommand(1);

  OutputOptions output;
  TypeSpec type_spec;
  std::string weight_arg, eta_arg, case_arg;
  int samples = 10000;
  std::uint64_t seed = 20240001;
  int cap = 3;
  int threads = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", output.json, "emit a JSON report");
    cmd->add_flag("--timing", output.timing, "include elapsed_ms in reports");
    cmd->add_option("--out", output.out_path, "write the report to a file");
  };
  const auto add_type = [&](CLI::App* cmd) {
    cmd->add_option("--type", type_spec.type, "root datum, e.g. F4 or B8")->required();
    cmd->add_option("--rank", type_spec.rank, "rank (with a bare family letter)");
  };

  auto* datum_cmd = app.add_subcommand("datum", "print Cartan data for a simple type");
  add_type(datum_cmd);
  add_common(datum_cmd);

  auto* dom_cmd = app.add_subcommand("dominantize", "first negative index algorithm");
  add_type(dom_cmd);
  dom_cmd->add_option("--weight", weight_arg, "weight, comma-separated rationals")->required();
  add_common(dom_cmd);

  auto* levi_cmd = app.add_subcommand("levi", "Levi subgroup attached to a lowest K-type");
  add_type(levi_cmd);
  levi_cmd->add_option("--eta", eta_arg, "dominant weight")->required();
  add_common(levi_cmd);

  auto* mcx_cmd = app.add_subcommand("mcx", "maximal Levi with cx-basic restriction");
  add_type(mcx_cmd);
  mcx_cmd->add_option("--eta", eta_arg, "dominant integral weight")->required();
  add_common(mcx_cmd);

  auto* bl_cmd = app.add_subcommand("bottom-layer", "dominance test for a K-type parameter");
  add_type(bl_cmd);
  bl_cmd->add_option("--eta", eta_arg, "dominant lowest K-type")->required();
  bl_cmd->add_option("--weight", weight_arg, "candidate gamma")->required();
  add_common(bl_cmd);

  auto* gammas_cmd = app.add_subcommand("gammas", "indefinite level-p catalog for a factor");
  add_type(gammas_cmd);
  gammas_cmd->add_option("--weight", weight_arg, "cx-basic lowest type of the factor")->required();
  add_common(gammas_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "named verification cases");
  verify_cmd->require_subcommand(1);

  auto* exc_cmd = verify_cmd->add_subcommand("exceptional", "one named exceptional case");
  exc_cmd->add_option("--case", case_arg, "case name, e.g. g2-eta10")->required();
  exc_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
  add_common(exc_cmd);

  auto* cls_cmd = verify_cmd->add_subcommand("classical", "random classical templates");
  add_type(cls_cmd);
  cls_cmd->add_option("--samples", samples, "number of samples");
  cls_cmd->add_option("--seed", seed, "random seed");
  cls_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
  add_common(cls_cmd);

  auto* sweep_cmd = verify_cmd->add_subcommand("sweep", "exhaustive bottom-layer checks");
  sweep_cmd->add_option("--type", type_spec.type, "root datum (omit to sweep all, rank <= 8)");
  sweep_cmd->add_option("--rank", type_spec.rank, "rank (with a bare family letter)");
  sweep_cmd->add_option("--cap", cap, "coordinate cap");
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
  add_common(sweep_cmd);

  auto* all_cmd = verify_cmd->add_subcommand("all", "the full verification suite");
  all_cmd->add_option("--samples", samples, "samples per classical run");
  all_cmd->add_option("--seed", seed, "random seed");
  all_cmd->add_option("--cap", cap, "sweep coordinate cap");
  all_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
  add_common(all_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*datum_cmd) {
      const fpp::RootDatum& d = type_spec.resolve();
      Json j;
      j["command"] = "datum";
      j["type"] = d.name();
      j["cartan"] = d.cartan;
      j["positive_roots"] = d.positive_roots.size();
      j["weyl_order"] = fpp::weyl_order(d);
      std::string text = d.name() + ": rank " + std::to_string(d.rank) + ", " +
                         std::to_string(d.positive_roots.size()) + " positive roots, |W| = " +
                         std::to_string(fpp::weyl_order(d)) + "\ncartan:\n";
      for (const auto& row : d.cartan) {
        for (long v : row) text += "  " + std::to_string(v);
        text += "\n";
      }
      emit(output, text, j);
      return 0;
    }
    if (*dom_cmd) {
      const fpp::RootDatum& d = type_spec.resolve();
      const fpp::Weight w = fpp::parse_weight(d, weight_arg);
      const auto dom = fpp::dominantize(w);
      Json j;
      j["command"] = "dominantize";
      j["type"] = d.name();
      j["input"] = fpp::weight_str(w);
      j["dominant"] = fpp::weight_str(dom.dominant);
      j["word"] = dom.word.letters;
      emit(output,
           "Lambda = " + fpp::weight_str(dom.dominant) + "\nword = " + fpp::word_str(dom.word) +
               "\n",
           j);
      return 0;
    }
    if (*levi_cmd) {
      const fpp::RootDatum& d = type_spec.resolve();
      const fpp::LeviDatum levi = fpp::levi_from_eta(fpp::parse_weight(d, eta_arg));
      Json j;
      j["command"] = "levi";
      j["type"] = d.name();
      j["nodes"] = levi.nodes;
      j["components"] = components_json(levi.components);
      emit(output,
           "I(M_f) = " + nodes_str(levi.nodes) + "\ntype: " + components_str(levi.components) +
               "\n",
           j);
      return 0;
    }
    if (*mcx_cmd) {
      const fpp::RootDatum& d = type_spec.resolve();
      const fpp::LeviDatum mcx = fpp::compute_mcx(fpp::parse_weight(d, eta_arg));
      Json j;
      j["command"] = "mcx";
      j["type"] = d.name();
      j["nodes"] = mcx.nodes;
      j["components"] = components_json(mcx.components);
      emit(output,
           "I(M_cx) = " + nodes_str(mcx.nodes) + "\ntype: " + components_str(mcx.components) +
               "\n",
           j);
      return 0;
    }
    if (*bl_cmd) {
      const fpp::RootDatum& d = type_spec.resolve();
      const fpp::Weight eta = fpp::parse_weight(d, eta_arg);
      const fpp::Weight gamma = fpp::parse_weight(d, weight_arg);
      const bool bottom = fpp::is_bottom_layer(eta, gamma);
      Json j;
      j["command"] = "bottom-layer";
      j["type"] = d.name();
      j["eta"] = fpp::weight_str(eta);
      j["gamma"] = fpp::weight_str(gamma);
      j["bottom_layer"] = bottom;
      emit(output, std::string("bottom layer: ") + (bottom ? "yes" : "no") + "\n", j);
      return 0;
    }
    if (*gammas_cmd) {
      const fpp::RootDatum& d = type_spec.resolve();
      const fpp::Weight tau = fpp::parse_weight(d, weight_arg);
      const auto gammas = fpp::indefinite_gammas(d.family, d.rank, tau);
      Json j;
      j["command"] = "gammas";
      j["type"] = d.name();
      j["tau"] = fpp::weight_str(tau);
      Json list = Json::array();
      std::string text;
      for (const fpp::Weight& g : gammas) {
        list.push_back(fpp::weight_str(g));
        text += fpp::weight_str(g) + "\n";
      }
      j["gammas"] = std::move(list);
      emit(output, text, j);
      return 0;
    }

    std::vector<VerificationReport> reports;
    const fpp::verify::VerifyOptions vo{threads};
    if (*exc_cmd) {
      if (case_arg == "g2-eta10" || case_arg == "g2-eta20" || case_arg == "f4-eta0010") {
        reports.push_back(fpp::verify::verify_outside_fpp_threshold(case_arg, vo));
        reports.push_back(fpp::verify::second_part_excludes_all(case_arg, vo));
      } else if (case_arg == "f4-eta0001") {
        reports.push_back(fpp::verify::enumerate_outside_fpp_witnesses(vo));
        reports.push_back(fpp::verify::second_part_excludes_all(case_arg, vo));
      } else if (case_arg == "f4-reduction-0020" || case_arg == "g2-reduction-a0" ||
                 case_arg == "g2-reduction-0b") {
        reports.push_back(fpp::verify::verify_reduction_case(case_arg));
      } else {
        throw fpp::input_error("unknown verification case '" + case_arg + "'");
      }
    } else if (*cls_cmd) {
      const fpp::RootDatum& d = type_spec.resolve();
      reports.push_back(fpp::verify::verify_classical(d.family, d.rank, samples, seed, vo));
    } else if (*sweep_cmd) {
      if (!type_spec.type.empty()) {
        const fpp::RootDatum& d = type_spec.resolve();
        reports.push_back(fpp::verify::verify_bottom_layer_sweep(d.family, d.rank, cap, vo));
      } else {
        for (char family : {'A', 'B', 'C', 'D'}) {
          const int min_rank =
              family == 'A' ? 1 : (family == 'B' ? 2 : (family == 'C' ? 3 : 4));
          for (int rank = min_rank; rank <= 8; ++rank)
            reports.push_back(fpp::verify::verify_bottom_layer_sweep(family, rank, cap, vo));
        }
        for (int rank : {6, 7, 8})
          reports.push_back(fpp::verify::verify_bottom_layer_sweep('E', rank, cap, vo));
        reports.push_back(fpp::verify::verify_bottom_layer_sweep('F', 4, cap, vo));
        reports.push_back(fpp::verify::verify_bottom_layer_sweep('G', 2, cap, vo));
      }
    } else if (*all_cmd) {
      reports = fpp::verify::verify_all({samples, seed, cap, threads});
    }

    emit(output, reports_text(reports, output.timing), reports_json(reports, output.timing));
    return reports_exit_code(reports);
  } catch (const fpp::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
