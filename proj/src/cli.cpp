#include "qmus/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "qmus/error.hpp"
#include "qmus/perform.hpp"
#include "qmus/render.hpp"
#include "qmus/score.hpp"

namespace qmus::cli {

namespace {

struct IoFailure {
  std::string message;
};

struct CliConfig {
  std::string command;
  std::string input_path;
  std::string output_path;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::string format;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoFailure{"cannot read '" + path + "'"};
  return ss.str();
}

void emit(const CliConfig& cfg, std::ostream& out, const std::string& bytes) {
  if (cfg.output_path.empty()) {
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoFailure{"cannot write '" + cfg.output_path + "'"};
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoFailure{"cannot write '" + cfg.output_path + "'"};
}

std::uint64_t enum_cap() {
  const char* env = std::getenv("QMUS_ENUM_CAP");
  if (!env || !*env) return perform::kEnumCap;
  std::uint64_t cap = 0;
  const std::string_view text(env);
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
  if (ec != std::errc{} || p != text.data() + text.size())
    throw IoFailure{"QMUS_ENUM_CAP must be a non-negative integer, got '" + std::string(text) + "'"};
  return cap;
}

int execute(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string source = read_file(cfg.input_path);
  const auto parsed = score::parse(source);
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) err << e.to_string() << "\n";
    return kScoreError;
  }
  const score::ScoreAST& ast = *parsed.score;

  if (cfg.command == "check") {
    emit(cfg, out, "OK\n");
    return kOk;
  }
  if (cfg.command == "perform") {
    const auto samples = perform::sample_performance(ast, cfg.seed, cfg.count);
    emit(cfg, out, perform::render_performance_log(samples));
    return kOk;
  }
  if (cfg.command == "analyze" || cfg.format == "csv") {
    const std::uint64_t cap = enum_cap();
    try {
      emit(cfg, out, perform::render_csv(perform::melody_distribution(ast, cap)));
    } catch (const EnumerationTooLarge& e) {
      err << "qmus: " << e.count() << " joint outcomes exceed the enumeration cap of " << e.cap()
          << "; use 'qmus perform' to sample performances instead\n";
      return kEnumerationCap;
    }
    return kOk;
  }
  if (cfg.format == "text") {
    emit(cfg, out, perform::render_text(ast));
    return kOk;
  }
  const auto samples = perform::sample_performance(ast, cfg.seed, cfg.count);
  const auto bytes = perform::render_midi(samples, ast.tempo_bpm);
  emit(cfg, out, std::string(bytes.begin(), bytes.end()));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum score engine: check, analyze, perform and render .qms scores", "qmus"};
  app.require_subcommand(1);

  CliConfig cfg;
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input_path, "Score file (.qms)")->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.output_path, "Write output to PATH instead of stdout");
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Base seed for the performance streams")
        ->default_val(0);
    sub->add_option("--count", cfg.count, "Number of performances")
        ->default_val(1)
        ->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "Validate a score");
  add_input(check);
  auto* analyze = app.add_subcommand("analyze", "Exact melody distribution as CSV");
  add_input(analyze);
  add_out(analyze);
  auto* perform_cmd = app.add_subcommand("perform", "Sample classical performances");
  add_input(perform_cmd);
  add_out(perform_cmd);
  add_sampling(perform_cmd);
  auto* render = app.add_subcommand("render", "Render a score as MIDI, CSV or text");
  add_input(render);
  add_out(render);
  add_sampling(render);
  render->add_option("--format", cfg.format, "Output format")
      ->required()
      ->check(CLI::IsMember({"csv", "midi", "text"}));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kIoError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    return execute(cfg, out, err);
  } catch (const IoFailure& e) {
    err << "qmus: " << e.message << "\n";
    return kIoError;
  } catch (const Error& e) {
    err << "qmus: " << e.what() << "\n";
    return kScoreError;
  }
}

}  // namespace qmus::cli
