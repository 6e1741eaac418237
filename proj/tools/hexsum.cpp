// hexsum <command> [options]: runs one experiment and writes its report.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexsum/experiments.hpp"
#include "hexsum/fourier.hpp"
#include "hexsum/parallel.hpp"

namespace {

using hexsum::ExperimentConfig;

double parse_p(const std::string& text) {
  if (text == "inf") return hexsum::kInfinity;
  std::size_t used = 0;
  const double p = std::stod(text, &used);
  if (used != text.size() || !(p >= 1.0)) throw std::invalid_argument("p must be a number >= 1 or 'inf', got '" + text + "'");
  return p;
}

std::optional<int> parse_grid(const std::string& text) {
  if (text == "auto") return std::nullopt;
  std::size_t used = 0;
  const int n = std::stoi(text, &used);
  if (used != text.size()) throw std::invalid_argument("grid must be an integer or 'auto', got '" + text + "'");
  return n;
}

hexsum::OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return hexsum::OutputFormat::csv;
  if (text == "json") return hexsum::OutputFormat::json;
  throw std::invalid_argument("format must be csv or json, got '" + text + "'");
}

std::string scalar_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Config file keys match the long flag names.
void apply_config_file(const std::string& path, ExperimentConfig& c) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("config file '" + path + "': expected a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "command") c.command = hexsum::parse_command(v.get<std::string>());
    else if (key == "rho-kmin") c.k_min = v.get<int>();
    else if (key == "rho-kmax") c.k_max = v.get<int>();
    else if (key == "r") c.r = v.get<int>();
    else if (key == "n") c.n = v.get<int>();
    else if (key == "p") c.p = parse_p(scalar_text(v));
    else if (key == "grid") c.grid_n = parse_grid(scalar_text(v));
    else if (key == "input") c.input_path = v.get<std::string>();
    else if (key == "out") c.output_path = v.get<std::string>();
    else if (key == "format") c.format = parse_format(v.get<std::string>());
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "family") c.family = v.get<std::string>();
    else throw std::runtime_error("config file '" + path + "': unknown key '" + key + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hexagonal Fourier summation experiments"};
  std::string command;
  int k_min = 0, k_max = 0, r = 0, n = 0;
  std::string p_text, grid_text, input, out, format, config_path, family;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  app.add_option("command", command, "verify | kernel | bernstein | approximate | rates | kfun");
  auto* o_kmin = app.add_option("--rho-kmin", k_min, "smallest k in rho = 1 - 2^-k (kfun: delta = 2^-k)");
  auto* o_kmax = app.add_option("--rho-kmax", k_max, "largest k");
  auto* o_r = app.add_option("--r", r, "order of the summation method or kernel derivative");
  auto* o_n = app.add_option("--n", n, "K-functional order");
  auto* o_p = app.add_option("--p", p_text, "norm exponent, a number >= 1 or inf");
  auto* o_grid = app.add_option("--grid", grid_text, "grid points per axis, or auto");
  auto* o_input = app.add_option("--input", input, "spectral function JSON file");
  auto* o_out = app.add_option("--out", out, "output file (default: stdout)");
  auto* o_format = app.add_option("--format", format, "csv or json");
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  auto* o_seed = app.add_option("--seed", seed, "seed for randomized checks");
  auto* o_family = app.add_option("--family", family, "analytic, shell-decay:S, polynomial:D or basis:K1,K2");
  app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hexsum::kExitConfig;
  }

  ExperimentConfig config;
  try {
    if (!config_path.empty()) apply_config_file(config_path, config);
    if (!command.empty()) config.command = hexsum::parse_command(command);
    else if (config_path.empty()) throw std::invalid_argument("missing command");
    if (o_kmin->count()) config.k_min = k_min;
    if (o_kmax->count()) config.k_max = k_max;
    if (o_r->count()) config.r = r;
    if (o_n->count()) config.n = n;
    if (o_p->count()) config.p = parse_p(p_text);
    if (o_grid->count()) config.grid_n = parse_grid(grid_text);
    if (o_input->count()) config.input_path = input;
    if (o_out->count()) config.output_path = out;
    if (o_format->count()) config.format = parse_format(format);
    if (o_seed->count()) config.seed = seed;
    if (o_family->count()) config.family = family;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return hexsum::kExitConfig;
  }
  hexsum::set_worker_count(threads);

  const auto result = hexsum::run_experiment(config);
  for (const auto& m : result.messages) std::cerr << m << '\n';
  if (result.exit_code == hexsum::kExitConfig) return result.exit_code;

  std::ostringstream text;
  if (config.format == hexsum::OutputFormat::json) result.report.write_json(text);
  else result.report.write_csv(text);

  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary);
    if (!file || !(file << text.str()) || !file.flush()) {
      std::cerr << "error: cannot write '" << *config.output_path << "'\n";
      return hexsum::kExitConfig;
    }
  } else {
    std::cout << text.str();
  }
  if (result.exit_code != hexsum::kExitPass) std::cerr << "one or more assertions failed\n";
  return result.exit_code;
}
