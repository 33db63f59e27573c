// wdftool: run circuit models over WAV files and benchmark them.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wdf/bench.hpp"
#include "wdf/circuits/registry.hpp"
#include "wdf/io/wav.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kUnknownCircuit = 2, kWavError = 3, kBadParameter = 4 };

using ParamList = std::vector<std::pair<std::string, double>>;

ParamList parse_params(const std::vector<std::string>& raw) {
  ParamList out;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw wdf::ParameterError("--param expects name=value, got '" + item + "'");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size())
      throw wdf::ParameterError("--param " + item.substr(0, eq) + ": '" + value + "' is not a number");
    out.emplace_back(item.substr(0, eq), v);
  }
  return out;
}

wdf::ApiKind parse_api(const std::string& s) {
  return s == "late" ? wdf::ApiKind::Late : wdf::ApiKind::Early;
}

int cmd_list(bool json) {
  const auto registry = wdf::circuit_registry();
  if (json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& info : registry) {
      nlohmann::json c;
      c["name"] = info.name;
      c["description"] = info.description;
      c["params"] = nlohmann::json::array();
      for (const auto& p : info.params)
        c["params"].push_back({{"name", p.name}, {"min", p.min}, {"max", p.max},
                               {"default", p.default_value}, {"unit", p.unit}});
      c["sample_types"] = nlohmann::json::array();
      for (auto k : info.sample_kinds) c["sample_types"].push_back(wdf::to_string(k));
      c["apis"] = {"early", "late"};
      out.push_back(std::move(c));
    }
    std::cout << out.dump(2) << '\n';
    return kOk;
  }
  for (const auto& info : registry) {
    std::cout << info.name << "  " << info.description << "\n  sample types:";
    for (auto k : info.sample_kinds) std::cout << ' ' << wdf::to_string(k);
    std::cout << '\n';
    for (const auto& p : info.params)
      std::printf("  %-8s [%g, %g] default %g %s\n", std::string(p.name).c_str(), p.min, p.max,
                  p.default_value, std::string(p.unit).c_str());
  }
  return kOk;
}

int cmd_process(const std::string& circuit, const std::string& in_path,
                const std::string& out_path, const std::vector<std::string>& raw_params,
                const std::string& api) {
  if (wdf::find_circuit(circuit) == nullptr) {
    std::cerr << "error: unknown circuit '" << circuit << "' (see 'wdftool list')\n";
    return kUnknownCircuit;
  }
  const ParamList params = parse_params(raw_params);

  wdf::io::WavData wav = wdf::io::read_wav(in_path);
  for (auto& channel : wav.channels) {
    // Channels are independent: one model instance each.
    auto model = wdf::make_circuit(circuit, parse_api(api));
    if (!params.empty()) model->set_params(params);
    model->prepare(wav.sample_rate);
    std::vector<double> out(channel.size());
    model->process_block(channel, out);
    channel = std::move(out);
  }
  wdf::io::write_wav(out_path, wav);
  return kOk;
}

int cmd_bench(wdf::bench::BenchConfig config, int batch, const std::vector<std::string>& raw_params,
              const std::string& csv_path) {
  if (wdf::find_circuit(config.circuit) == nullptr) {
    std::cerr << "error: unknown circuit '" << config.circuit << "' (see 'wdftool list')\n";
    return kUnknownCircuit;
  }
  if (batch != 1 && batch != 4) throw wdf::ParameterError("--batch must be 1 or 4");
  config.sample_kind = batch == 4 ? wdf::SampleKind::Batch4 : wdf::SampleKind::Scalar;
  config.params = parse_params(raw_params);

  const auto report = wdf::bench::run_bench(config);
  std::ofstream csv(csv_path);
  if (!csv) {
    std::cerr << "error: cannot write '" << csv_path << "'\n";
    return kFailure;
  }
  wdf::bench::write_csv(csv, report);
  const auto& med = report.median_row();
  std::printf("%s %s %s: median %.6f s for %.3f s of audio (%.1fx realtime), checksum %016llx\n",
              med.circuit.c_str(), med.api.c_str(), med.sample_type.c_str(), med.wall_seconds,
              med.audio_seconds, med.realtime_factor,
              static_cast<unsigned long long>(report.checksum));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave digital filter circuit models: process audio and benchmark"};
  app.require_subcommand(1);

  bool json = false;
  auto* list = app.add_subcommand("list", "List circuits, parameters and sample types");
  list->add_flag("--json", json, "Machine-readable output");

  std::string circuit, in_path, out_path, api = "early", csv_path;
  std::vector<std::string> raw_params;

  auto* process = app.add_subcommand("process", "Process a WAV file through a circuit");
  process->add_option("--circuit", circuit, "Circuit name")->required();
  process->add_option("--in", in_path, "Input WAV")->required();
  process->add_option("--out", out_path, "Output WAV")->required();
  process->add_option("--param", raw_params, "name=value (repeatable)");
  process->add_option("--api", api, "early or late")->check(CLI::IsMember({"early", "late"}));

  wdf::bench::BenchConfig config;
  int batch = 1;
  auto* bench = app.add_subcommand("bench", "Time a circuit on seeded noise");
  bench->add_option("--circuit", config.circuit, "Circuit name")->required();
  bench->add_option("--seconds", config.seconds, "Seconds of audio")->required();
  bench->add_option("--fs", config.sample_rate, "Sample rate in Hz")->required();
  bench->add_option("--api", api, "early or late")->required()->check(CLI::IsMember({"early", "late"}));
  bench->add_option("--batch", batch, "Lanes: 1 (scalar) or 4 (poly_voice_bank only)");
  bench->add_option("--warmup", config.warmup, "Untimed passes")->capture_default_str();
  bench->add_option("--repeats", config.repeats, "Timed passes")->capture_default_str();
  bench->add_option("--seed", config.seed, "Noise seed")->capture_default_str();
  bench->add_option("--param", raw_params, "name=value (repeatable)");
  bench->add_option("--csv", csv_path, "CSV output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) return cmd_list(json);
    if (*process) return cmd_process(circuit, in_path, out_path, raw_params, api);
    config.api = parse_api(api);
    return cmd_bench(config, batch, raw_params, csv_path);
  } catch (const wdf::UnknownCircuitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnknownCircuit;
  } catch (const wdf::io::WavError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kWavError;
  } catch (const wdf::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
