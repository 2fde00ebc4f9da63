// Command-line front end: validate and analyze channels, check noiseless
// subsystems and correctability, synthesize recoveries, and emit the built-in
// worked examples as JSON fixtures.
//
// Exit codes: 0 pass, 1 semantic fail, 2 input/parse error, 3 synthesis failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "oqec/examples.hpp"
#include "oqec/io.hpp"
#include "oqec/uns.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace oqec;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitSynthesis = 3;

struct Options {
  std::string format = "text";
  double atol = Tolerance{}.atol;
  uint64_t seed = 0;

  Tolerance tolerance() const { return Tolerance(atol, Tolerance{}.rank_rtol); }
  bool json_output() const { return format == "json"; }
};

json lambda3_to_json(const std::vector<std::vector<Complex>>& lambda, Eigen::Index m) {
  json out = json::array();
  for (const auto& per_kraus : lambda) {
    json rows = json::array();
    for (Eigen::Index k = 0; k < m; ++k) {
      json row = json::array();
      for (Eigen::Index l = 0; l < m; ++l)
        row.push_back({per_kraus[k * m + l].real(), per_kraus[k * m + l].imag()});
      rows.push_back(std::move(row));
    }
    out.push_back(std::move(rows));
  }
  return out;
}

void print_lambda3(const std::vector<std::vector<Complex>>& lambda, Eigen::Index m,
                   const std::string& label) {
  for (size_t a = 0; a < lambda.size(); ++a)
    for (Eigen::Index k = 0; k < m; ++k)
      for (Eigen::Index l = 0; l < m; ++l) {
        Complex v = lambda[a][k * m + l];
        if (std::abs(v) > 1e-14)
          std::cout << label << "[" << a << "][" << k + 1 << "][" << l + 1 << "] = " << v.real()
                    << (v.imag() < 0 ? " - " : " + ") << std::abs(v.imag()) << "i\n";
      }
}

json block_table_json(const BlockStructure& bs) {
  json blocks = json::array();
  for (const auto& b : bs.blocks) blocks.push_back({{"m", b.m}, {"n", b.n}});
  return blocks;
}

std::string block_table_text(const BlockStructure& bs) {
  std::string out;
  for (const auto& b : bs.blocks)
    out += "(m=" + std::to_string(b.m) + ", n=" + std::to_string(b.n) + ") ";
  if (!out.empty()) out.pop_back();
  return out;
}

void emit(const Options& opt, const json& doc, const std::string& text) {
  if (opt.json_output())
    std::cout << doc.dump(1) << "\n";
  else
    std::cout << text;
}

int cmd_validate(const Options& opt, const fs::path& path) {
  ChannelFileData data = read_channel_data(path);
  ChannelReport report = validate(data.kraus, opt.tolerance());
  json doc{{"schema", 1},
           {"command", "validate"},
           {"dim", data.dim},
           {"kraus_count", report.kraus_count},
           {"trace_preserving", report.trace_preserving},
           {"tp_residual", report.tp_residual},
           {"unital", report.unital},
           {"unital_residual", report.unital_residual}};
  std::string text;
  text += "channel: " + path.string() + "\n";
  text += "dim: " + std::to_string(data.dim) +
          ", kraus: " + std::to_string(report.kraus_count) + "\n";
  text += std::string("trace_preserving: ") + (report.trace_preserving ? "yes" : "no") +
          " (residual " + std::to_string(report.tp_residual) + ")\n";
  text += std::string("unital: ") + (report.unital ? "yes" : "no") + " (residual " +
          std::to_string(report.unital_residual) + ")\n";
  emit(opt, doc, text);
  return report.trace_preserving ? kExitPass : kExitFail;
}

int cmd_analyze(const Options& opt, const fs::path& path, std::optional<fs::path> out_dir) {
  Tolerance tol = opt.tolerance();
  QuantumChannel ch = read_channel(path, tol);
  ChannelReport report = validate(ch, tol);

  AlgebraBasis interaction = generate_algebra(ch.kraus(), tol);
  AlgebraBasis comm = commutant(interaction, tol);
  OperatorSpace fix = fixed_points(ch, tol);
  BlockStructure bs = decompose_structure(interaction, tol, opt.seed);

  json doc{{"schema", 1},
           {"command", "analyze"},
           {"seed", opt.seed},
           {"dim", ch.dim()},
           {"unital", report.unital},
           {"interaction_algebra_dim", interaction.size()},
           {"commutant_dim", comm.size()},
           {"fixed_points_dim", fix.size()},
           {"blocks", block_table_json(bs)}};
  std::string text;
  text += "seed: " + std::to_string(opt.seed) + "\n";
  text += "dim: " + std::to_string(ch.dim()) + "\n";
  text += std::string("unital: ") + (report.unital ? "yes" : "no") + "\n";
  text += "interaction_algebra_dim: " + std::to_string(interaction.size()) + "\n";
  text += "commutant_dim: " + std::to_string(comm.size()) + "\n";
  text += "fixed_points_dim: " + std::to_string(fix.size()) + "\n";
  text += "blocks: " + block_table_text(bs) + "\n";

  json written = json::array();
  if (report.unital) {
    NSSearch search = find_ns_unital(ch, tol, opt.seed);
    text += "noiseless_subsystems: " + std::to_string(search.noiseless.size()) + "\n";
    text += "classical_sectors: " + std::to_string(search.classical.size()) + "\n";
    fs::path dir = out_dir.value_or(path.parent_path());
    for (size_t i = 0; i < search.noiseless.size(); ++i) {
      fs::path file = dir / (path.stem().string() + "_ns" + std::to_string(i) + ".json");
      write_decomposition(file, search.noiseless[i]);
      written.push_back(file.string());
      text += "wrote: " + file.string() + "\n";
    }
  } else {
    text += "channel is not unital; discovery skipped (run check-ns on a candidate "
            "decomposition, or uns with a unitary)\n";
  }
  doc["noiseless_decomposition_files"] = written;
  emit(opt, doc, text);
  return kExitPass;
}

int cmd_check_ns(const Options& opt, const fs::path& channel_path, const fs::path& dec_path) {
  Tolerance tol = opt.tolerance();
  QuantumChannel ch = read_channel(channel_path, tol);
  SubsystemDecomposition dec = read_decomposition(dec_path, tol);
  NSReport report = verify_ns(ch, dec, tol);
  json doc{{"schema", 1},
           {"command", "check-ns"},
           {"noiseless", report.noiseless},
           {"cond1_residual", report.cond1_residual},
           {"cond2_residual", report.cond2_residual},
           {"m", dec.m()},
           {"n", dec.n()},
           {"lambda", lambda3_to_json(report.lambda, dec.m())}};
  std::string text;
  text += std::string("noiseless: ") + (report.noiseless ? "yes" : "no") + "\n";
  text += "cond1_residual: " + std::to_string(report.cond1_residual) + "\n";
  text += "cond2_residual: " + std::to_string(report.cond2_residual) + "\n";
  emit(opt, doc, text);
  if (!opt.json_output()) print_lambda3(report.lambda, dec.m(), "lambda");
  return report.noiseless ? kExitPass : kExitFail;
}

int cmd_check_oqec(const Options& opt, const fs::path& channel_path, const fs::path& dec_path) {
  Tolerance tol = opt.tolerance();
  QuantumChannel ch = read_channel(channel_path, tol);
  SubsystemDecomposition dec = read_decomposition(dec_path, tol);
  OQECReport report = oqec_check(ch, dec, tol);
  const Eigen::Index m = dec.m();
  json lambda = json::array();
  for (const auto& ab : report.lambda4) {
    json rows = json::array();
    for (Eigen::Index k = 0; k < m; ++k) {
      json row = json::array();
      for (Eigen::Index l = 0; l < m; ++l)
        row.push_back({ab[k * m + l].real(), ab[k * m + l].imag()});
      rows.push_back(std::move(row));
    }
    lambda.push_back(std::move(rows));
  }
  json doc{{"schema", 1},
           {"command", "check-oqec"},
           {"correctable", report.correctable},
           {"residual", report.residual},
           {"m", dec.m()},
           {"n", dec.n()},
           {"lambda", std::move(lambda)}};
  std::string text;
  text += std::string("correctable: ") + (report.correctable ? "yes" : "no") + "\n";
  text += "residual: " + std::to_string(report.residual) + "\n";
  emit(opt, doc, text);
  return report.correctable ? kExitPass : kExitFail;
}

int cmd_recover(const Options& opt, const fs::path& channel_path, const fs::path& dec_path,
                const fs::path& out_path) {
  Tolerance tol = opt.tolerance();
  QuantumChannel ch = read_channel(channel_path, tol);
  SubsystemDecomposition dec = read_decomposition(dec_path, tol);

  OQECReport check = oqec_check(ch, dec, tol);
  if (!check.correctable) {
    std::cerr << "not correctable: residual " << check.residual << "\n";
    return kExitFail;
  }
  RecoveryChannel recovery = synthesize_oqec_recovery(ch, dec, tol);
  if (!verify_correctable_triple(recovery.channel, ch, dec, tol)) {
    std::cerr << "synthesis produced a recovery that failed self-verification\n";
    return kExitSynthesis;
  }
  write_channel(out_path, recovery.channel);
  json doc{{"schema", 1},
           {"command", "recover"},
           {"provenance", recovery.provenance},
           {"kraus_count", recovery.channel.kraus().size()},
           {"verified", true},
           {"output", out_path.string()}};
  std::string text;
  text += "recovery: " + recovery.provenance + "\n";
  text += "kraus: " + std::to_string(recovery.channel.kraus().size()) + "\n";
  text += "verified: yes\n";
  text += "wrote: " + out_path.string() + "\n";
  emit(opt, doc, text);
  return kExitPass;
}

int cmd_uns(const Options& opt, const fs::path& channel_path, const fs::path& unitary_path,
            std::optional<fs::path> out_dir) {
  Tolerance tol = opt.tolerance();
  QuantumChannel ch = read_channel(channel_path, tol);
  ComplexMatrix U = read_unitary(unitary_path, tol);
  UNSReport report = uns_algebra(ch, U, tol, opt.seed);

  json doc{{"schema", 1},
           {"command", "uns"},
           {"seed", opt.seed},
           {"algebra_dim", report.algebra.size()},
           {"evolve_residual", report.evolve_residual},
           {"blocks", block_table_json(report.structure)}};
  std::string text;
  text += "seed: " + std::to_string(opt.seed) + "\n";
  text += "algebra_dim: " + std::to_string(report.algebra.size()) + "\n";
  text += "blocks: " + block_table_text(report.structure) + "\n";
  text += "evolve_residual: " + std::to_string(report.evolve_residual) + "\n";

  json written = json::array();
  if (out_dir) {
    // Quantum sectors: algebra blocks M_m with m >= 2 become decompositions
    // with the information in the B factor, corrected by U^dag (.) U.
    int index = 0;
    for (const auto& block : report.structure.blocks) {
      if (block.m < 2) continue;
      SubsystemDecomposition sector = swap_factors(
          SubsystemDecomposition(ch.dim(), block.m, block.n, block.isometry, tol), tol);
      fs::path file =
          *out_dir / (channel_path.stem().string() + "_uns" + std::to_string(index++) + ".json");
      write_decomposition(file, sector);
      written.push_back(file.string());
      text += "wrote: " + file.string() + "\n";
    }
  }
  doc["sector_files"] = written;
  emit(opt, doc, text);
  return kExitPass;
}

int cmd_candidates(const Options& opt, Eigen::Index dim, const fs::path& out_dir, int limit) {
  if (dim < 2) throw FileFormatError("candidates: dim must be at least 2");
  fs::create_directories(out_dir);
  json written = json::array();
  std::string text = "seed: " + std::to_string(opt.seed) + "\n";
  auto record = [&](const fs::path& file) {
    written.push_back(file.string());
    text += "wrote: " + file.string() + "\n";
  };

  // Permutation candidates: exhaustive for small dims, seeded sample otherwise.
  int count = 0;
  std::vector<Eigen::Index> perm(dim);
  for (Eigen::Index i = 0; i < dim; ++i) perm[i] = i;
  if (dim <= 4) {
    while (std::next_permutation(perm.begin(), perm.end()) && count < limit) {
      ComplexMatrix U = ComplexMatrix::Zero(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) U(perm[i], i) = 1.0;
      fs::path file = out_dir / ("perm_" + std::to_string(count++) + ".json");
      write_unitary(file, U);
      record(file);
    }
  } else {
    Rng rng(opt.seed);
    for (; count < limit; ++count) {
      std::shuffle(perm.begin(), perm.end(), rng);
      ComplexMatrix U = ComplexMatrix::Zero(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) U(perm[i], i) = 1.0;
      fs::path file = out_dir / ("perm_" + std::to_string(count) + ".json");
      write_unitary(file, U);
      record(file);
    }
  }

  // Diagonal sign flips, skipping the identity pattern and its global negation.
  int flips = 0;
  const uint64_t patterns = uint64_t(1) << (dim - 1);
  for (uint64_t bits = 1; bits < patterns && flips < limit; ++bits, ++flips) {
    ComplexMatrix U = ComplexMatrix::Identity(dim, dim);
    for (Eigen::Index i = 0; i < dim - 1; ++i)
      if (bits & (uint64_t(1) << i)) U(i + 1, i + 1) = -1.0;
    fs::path file = out_dir / ("flip_" + std::to_string(flips) + ".json");
    write_unitary(file, U);
    record(file);
  }

  json doc{{"schema", 1},
           {"command", "candidates"},
           {"dim", dim},
           {"seed", opt.seed},
           {"files", written}};
  emit(opt, doc, text);
  return kExitPass;
}

int cmd_example(const Options& opt, const std::string& name,
                const std::vector<std::string>& params, const fs::path& out_dir) {
  double gamma = 0.3, q = 0.25;
  for (const auto& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos)
      throw FileFormatError("example: --param expects key=value, got '" + p + "'");
    const std::string key = p.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw FileFormatError("example: parameter '" + key + "' is not a number");
    }
    if (key == "gamma")
      gamma = value;
    else if (key == "q")
      q = value;
    else
      throw FileFormatError("example: unknown parameter '" + key + "'");
  }

  ExampleFixture fixture = [&]() -> ExampleFixture {
    if (name == "example1") return example1(gamma);
    if (name == "example2") return example2(q);
    if (name == "oqec") return example_oqec(opt.seed);
    if (name == "uns") return example_uns();
    throw FileFormatError("unknown example '" + name + "'");
  }();

  fs::create_directories(out_dir);
  json written = json::array();
  std::string text = "seed: " + std::to_string(opt.seed) + "\n";
  auto record = [&](const fs::path& file) {
    written.push_back(file.string());
    text += "wrote: " + file.string() + "\n";
  };

  fs::path channel_file = out_dir / (name + "_channel.json");
  write_channel(channel_file, fixture.channel);
  record(channel_file);
  const char* dec_names[] = {"_b1", "_b2", "_b3"};
  for (size_t i = 0; i < fixture.decompositions.size(); ++i) {
    fs::path file = out_dir / (name +
                               (fixture.decompositions.size() > 1 ? dec_names[i] : "_dec") +
                               std::string(".json"));
    write_decomposition(file, fixture.decompositions[i]);
    record(file);
  }
  if (!fixture.recoveries.empty()) {
    fs::path file = out_dir / (name + "_recovery.json");
    write_channel(file, fixture.recoveries[0].channel);
    record(file);
  }
  if (!fixture.unitaries.empty()) {
    fs::path file = out_dir / (name + "_unitary.json");
    write_unitary(file, fixture.unitaries[0]);
    record(file);
  }

  json doc{{"schema", 1},
           {"command", "example"},
           {"name", name},
           {"seed", opt.seed},
           {"files", written}};
  emit(opt, doc, text);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operator quantum error correction toolkit"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("OQEC_ATOL")) {
    try {
      opt.atol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "OQEC_ATOL is not a number\n";
      return kExitInput;
    }
  }
  app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--atol", opt.atol, "Absolute tolerance (overrides OQEC_ATOL)");

  std::string channel_path, dec_path, unitary_path, out_path, example_name;
  std::vector<std::string> params;
  std::optional<fs::path> out_dir;
  std::string out_dir_raw;

  CLI::App* validate_cmd = app.add_subcommand("validate", "Validate a channel file");
  validate_cmd->add_option("channel", channel_path)->required();

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Interaction algebra, commutant, blocks, fixed points");
  analyze_cmd->add_option("channel", channel_path)->required();
  analyze_cmd->add_option("--seed", opt.seed, "Seed for the randomized block split");
  analyze_cmd->add_option("--out", out_dir_raw, "Directory for discovered decompositions");

  CLI::App* checkns_cmd = app.add_subcommand("check-ns", "Noiseless-subsystem conditions");
  checkns_cmd->add_option("channel", channel_path)->required();
  checkns_cmd->add_option("decomposition", dec_path)->required();

  CLI::App* checkoqec_cmd = app.add_subcommand("check-oqec", "Correctability condition");
  checkoqec_cmd->add_option("channel", channel_path)->required();
  checkoqec_cmd->add_option("decomposition", dec_path)->required();

  CLI::App* recover_cmd = app.add_subcommand("recover", "Synthesize and verify a recovery");
  recover_cmd->add_option("channel", channel_path)->required();
  recover_cmd->add_option("decomposition", dec_path)->required();
  recover_cmd->add_option("--out", out_path, "Recovery channel file")->required();

  CLI::App* uns_cmd = app.add_subcommand("uns", "Unitarily noiseless subsystems");
  uns_cmd->add_option("channel", channel_path)->required();
  uns_cmd->add_option("unitary", unitary_path)->required();
  uns_cmd->add_option("--seed", opt.seed, "Seed for the randomized block split");
  uns_cmd->add_option("--out", out_dir_raw, "Directory for correctable-sector decompositions");

  Eigen::Index cand_dim = 4;
  int cand_limit = 24;
  CLI::App* cand_cmd =
      app.add_subcommand("candidates", "Write permutation and sign-flip unitaries for uns");
  cand_cmd->add_option("dim", cand_dim)->required();
  cand_cmd->add_option("--limit", cand_limit, "Cap per candidate family");
  cand_cmd->add_option("--seed", opt.seed, "Seed when sampling permutations");
  cand_cmd->add_option("--out", out_dir_raw, "Output directory (default .)");

  CLI::App* example_cmd = app.add_subcommand("example", "Write a built-in example to files");
  example_cmd->add_option("name", example_name, "example1 | example2 | oqec | uns")->required();
  example_cmd->add_option("--param", params, "Parameter overrides, e.g. q=0.25");
  example_cmd->add_option("--seed", opt.seed, "Seed for randomized constructions");
  example_cmd->add_option("--out", out_dir_raw, "Output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (!out_dir_raw.empty()) out_dir = fs::path(out_dir_raw);

  try {
    try {
      Tolerance check = opt.tolerance();  // rejects a nonsensical --atol early
      (void)check;
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << "\n";
      return kExitInput;
    }
    if (validate_cmd->parsed()) return cmd_validate(opt, channel_path);
    if (analyze_cmd->parsed()) return cmd_analyze(opt, channel_path, out_dir);
    if (checkns_cmd->parsed()) return cmd_check_ns(opt, channel_path, dec_path);
    if (checkoqec_cmd->parsed()) return cmd_check_oqec(opt, channel_path, dec_path);
    if (recover_cmd->parsed()) return cmd_recover(opt, channel_path, dec_path, out_path);
    if (uns_cmd->parsed()) return cmd_uns(opt, channel_path, unitary_path, out_dir);
    if (example_cmd->parsed())
      return cmd_example(opt, example_name, params, out_dir.value_or(fs::path(".")));
    if (cand_cmd->parsed())
      return cmd_candidates(opt, cand_dim, out_dir.value_or(fs::path(".")), cand_limit);
  } catch (const FileFormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const TracePreservationError& e) {
    std::cerr << "invalid channel: " << e.what() << "\n";
    return kExitFail;
  } catch (const NotUnitalError& e) {
    std::cerr << "requires a unital channel: " << e.what() << "\n";
    return kExitFail;
  } catch (const NotCorrectableError& e) {
    std::cerr << "not correctable: " << e.what() << "\n";
    return kExitFail;
  } catch (const SynthesisError& e) {
    std::cerr << "synthesis failure: " << e.what() << "\n";
    return kExitSynthesis;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
