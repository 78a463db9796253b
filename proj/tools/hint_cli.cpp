// Copyright 2026 The HINT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// hint-cli: generate data, pretrain, fine-tune, evaluate, sweep and explain.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hint/hint.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct CliError : std::runtime_error {
  CliError(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
  int exit_code;
};

void check(hint_status st, const std::string& context) {
  if (st == HINT_OK) return;
  const int code = st == HINT_ERR_CONFIG ? kExitConfig : kExitFailure;
  throw CliError(code, context + ": " + hint_last_error());
}

struct ConfigDeleter {
  void operator()(hint_config* c) const { hint_config_free(c); }
};
struct DatasetDeleter {
  void operator()(hint_dataset* d) const { hint_dataset_free(d); }
};
struct ModelDeleter {
  void operator()(hint_model* m) const { hint_model_free(m); }
};
using ConfigPtr = std::unique_ptr<hint_config, ConfigDeleter>;
using DatasetPtr = std::unique_ptr<hint_dataset, DatasetDeleter>;
using ModelPtr = std::unique_ptr<hint_model, ModelDeleter>;

std::string take(char* s) {
  std::string out(s);
  hint_string_free(s);
  return out;
}

// Options shared by every subcommand: a JSON config plus key=value overrides.
struct ConfigOptions {
  std::string path;
  std::vector<std::string> overrides;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", path, "JSON run configuration");
    cmd->add_option("--set", overrides, "Override a configuration key (key=value)");
  }
};

ConfigPtr load_config(const ConfigOptions& opts) {
  hint_config* raw = nullptr;
  if (opts.path.empty()) {
    check(hint_config_new(&raw), "config");
  } else {
    check(hint_config_from_file(opts.path.c_str(), &raw), "config");
  }
  ConfigPtr cfg(raw);
  for (const std::string& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw CliError(kExitConfig, "config: --set expects key=value, got \"" + kv + "\"");
    }
    check(hint_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()),
          "config");
  }
  return cfg;
}

void set_key(hint_config* cfg, const char* key, const std::string& value) {
  check(hint_config_set(cfg, key, value.c_str()), "config");
}

void validate(const hint_config* cfg) { check(hint_config_validate(cfg), "config"); }

std::string config_json(const hint_config* cfg) {
  char* s = nullptr;
  check(hint_config_to_json(cfg, &s), "config");
  return take(s);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliError(kExitFailure, "cannot write " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CliError(kExitFailure, "cannot create " + dir.string() + ": " + ec.message());
}

// Writes the effective configuration next to a run's artifacts.
void echo_config(const fs::path& dir, const hint_config* cfg) {
  write_text(dir / "config.json", config_json(cfg) + "\n");
}

DatasetPtr load_data(const std::string& path) {
  hint_dataset* raw = nullptr;
  check(hint_dataset_load(path.c_str(), &raw), path);
  return DatasetPtr(raw);
}

ModelPtr load_model(const hint_config* cfg, const std::string& path) {
  hint_model* raw = nullptr;
  check(hint_model_load(cfg, path.c_str(), &raw), path);
  return ModelPtr(raw);
}

std::string evaluate_json(const hint_model* model, const hint_dataset* data) {
  char* s = nullptr;
  check(hint_evaluate(model, data, &s), "evaluate");
  return take(s);
}

void append_line(const char* line, void* user) {
  auto* out = static_cast<std::ofstream*>(user);
  *out << line << '\n';
}

hint_mode parse_mode(const std::string& s) {
  if (s == "base") return HINT_MODE_BASE;
  if (s == "hint") return HINT_MODE_HINT;
  if (s == "attn_align") return HINT_MODE_ATTN_ALIGN;
  throw CliError(kExitConfig, "unknown mode \"" + s + "\"");
}

// Trains `model` and writes the checkpoint, the per-epoch log and the
// effective configuration into `dir`.
void train_into(const fs::path& dir, hint_model* model, const hint_dataset* data,
                const hint_config* cfg, hint_stage stage, hint_mode mode,
                std::optional<std::size_t> epochs) {
  ensure_dir(dir);
  echo_config(dir, cfg);
  std::ofstream log(dir / "log.jsonl", std::ios::binary);
  if (!log) throw CliError(kExitFailure, "cannot write " + (dir / "log.jsonl").string());
  int clamped = 0;
  if (epochs && *epochs == 0) {
    // Zero epochs leaves the initialization untouched.
  } else {
    check(hint_train(model, data, cfg, stage, mode, epochs.value_or(0), append_line, &log,
                     &clamped),
          "train");
  }
  if (clamped != 0) {
    std::cerr << "warning: fewer raster-bearing examples than the requested supervised "
                 "fraction; using all of them\n";
  }
  log.close();
  check(hint_model_save(model, (dir / "model.ckpt").string().c_str()), "checkpoint");
}

void print_summary(const std::string& report_json) {
  const auto r = nlohmann::json::parse(report_json);
  auto show = [&](const char* key) {
    std::printf("%-22s ", key);
    if (r[key].is_null()) {
      std::printf("n/a\n");
    } else {
      std::printf("%.4f\n", r[key].get<double>());
    }
  };
  show("accuracy");
  show("spearman_grad_human");
  show("spearman_attn_human");
  show("corr_grad_occlusion");
  show("corr_attn_occlusion");
  show("iou_top");
  std::printf("%-22s %zu\n", "n_examples", r["n_examples"].get<std::size_t>());
  std::printf("%-22s %zu\n", "n_supervisable", r["n_supervisable"].get<std::size_t>());
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Human importance-aware network tuning"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hint_version());

  // gen
  ConfigOptions gen_cfg;
  std::string out_train, out_test;
  std::optional<std::uint64_t> gen_seed;
  auto* gen = app.add_subcommand("gen", "Generate the synthetic train/test splits");
  gen_cfg.attach(gen);
  gen->add_option("--out-train", out_train, "Train split JSONL")->required();
  gen->add_option("--out-test", out_test, "Test split JSONL")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");

  // train
  ConfigOptions train_cfg;
  std::string train_data, train_out, train_mode = "base", train_init;
  std::optional<std::uint64_t> train_seed;
  std::optional<std::size_t> train_epochs;
  auto* train = app.add_subcommand("train", "Pretrain a model in base mode");
  train_cfg.attach(train);
  train->add_option("--data", train_data, "Train split JSONL")->required();
  train->add_option("--out", train_out, "Output directory")->required();
  train->add_option("--mode", train_mode, "Training mode")->check(CLI::IsMember({"base"}));
  train->add_option("--seed", train_seed, "Initialization and shuffling seed");
  train->add_option("--epochs", train_epochs, "Epochs (default: pretrain_epochs)");
  train->add_option("--init", train_init, "Start from this checkpoint instead of a fresh init");

  // hint
  ConfigOptions hint_cfg;
  std::string hint_data, hint_ckpt, hint_out, hint_mode_name = "hint";
  std::optional<double> hint_lambda, hint_frac;
  std::optional<std::uint64_t> hint_seed;
  std::optional<std::size_t> hint_epochs;
  auto* tune = app.add_subcommand("hint", "Fine-tune a checkpoint with importance supervision");
  hint_cfg.attach(tune);
  tune->add_option("--data", hint_data, "Train split JSONL")->required();
  tune->add_option("--ckpt", hint_ckpt, "Base checkpoint")->required();
  tune->add_option("--out", hint_out, "Output directory")->required();
  tune->add_option("--mode", hint_mode_name, "hint, attn_align or base")
      ->check(CLI::IsMember({"hint", "attn_align", "base"}));
  tune->add_option("--lambda", hint_lambda, "Task loss weight (default 10)");
  tune->add_option("--frac", hint_frac, "Supervised fraction (default 0.06)");
  tune->add_option("--seed", hint_seed, "Shuffling and supervision seed");
  tune->add_option("--epochs", hint_epochs, "Epochs (default: finetune_epochs)");

  // eval
  ConfigOptions eval_cfg;
  std::string eval_data, eval_ckpt, eval_report;
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint");
  eval_cfg.attach(eval);
  eval->add_option("--data", eval_data, "Dataset JSONL")->required();
  eval->add_option("--ckpt", eval_ckpt, "Checkpoint")->required();
  eval->add_option("--report", eval_report, "Write the JSON report here");

  // sweep
  ConfigOptions sweep_cfg;
  std::string sweep_fracs = "0,0.015,0.06,0.25,1.0", sweep_seeds = "0,1,2", sweep_out,
              sweep_csv, sweep_mode = "hint";
  auto* sweep = app.add_subcommand("sweep", "Supervised-fraction sweep over seeds");
  sweep_cfg.attach(sweep);
  sweep->add_option("--fracs", sweep_fracs, "Comma-separated supervised fractions");
  sweep->add_option("--seeds", sweep_seeds, "Comma-separated seeds");
  sweep->add_option("--out", sweep_out, "Working directory for per-run artifacts")->required();
  sweep->add_option("--csv", sweep_csv, "Write the CSV here as well as to stdout");
  sweep->add_option("--mode", sweep_mode, "Fine-tuning mode")
      ->check(CLI::IsMember({"hint", "attn_align"}));

  // explain
  ConfigOptions explain_cfg;
  std::string explain_data, explain_ckpt, explain_id;
  auto* explain = app.add_subcommand("explain", "Per-proposal importance dump for one example");
  explain_cfg.attach(explain);
  explain->add_option("--data", explain_data, "Dataset JSONL")->required();
  explain->add_option("--ckpt", explain_ckpt, "Checkpoint")->required();
  explain->add_option("--id", explain_id, "Example id")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      ConfigPtr cfg = load_config(gen_cfg);
      if (gen_seed) set_key(cfg.get(), "seed", std::to_string(*gen_seed));
      validate(cfg.get());
      for (const std::string& p : {out_train, out_test}) {
        const fs::path parent = fs::path(p).parent_path();
        if (!parent.empty()) ensure_dir(parent);
      }
      check(hint_generate(cfg.get(), out_train.c_str(), out_test.c_str()), "gen");
      const fs::path dir = fs::path(out_train).parent_path();
      echo_config(dir.empty() ? fs::path(".") : dir, cfg.get());
    } else if (train->parsed()) {
      ConfigPtr cfg = load_config(train_cfg);
      if (train_seed) set_key(cfg.get(), "seed", std::to_string(*train_seed));
      validate(cfg.get());
      DatasetPtr data = load_data(train_data);
      ModelPtr model;
      if (train_init.empty()) {
        const auto seed = nlohmann::json::parse(config_json(cfg.get()))["seed"].get<std::uint64_t>();
        hint_model* raw = nullptr;
        check(hint_model_init(cfg.get(), seed, &raw), "init");
        model.reset(raw);
      } else {
        model = load_model(cfg.get(), train_init);
      }
      train_into(train_out, model.get(), data.get(), cfg.get(), HINT_STAGE_PRETRAIN,
                 HINT_MODE_BASE, train_epochs);
    } else if (tune->parsed()) {
      ConfigPtr cfg = load_config(hint_cfg);
      if (hint_seed) set_key(cfg.get(), "seed", std::to_string(*hint_seed));
      if (hint_lambda) set_key(cfg.get(), "lambda", nlohmann::json(*hint_lambda).dump());
      if (hint_frac) set_key(cfg.get(), "supervised_fraction", nlohmann::json(*hint_frac).dump());
      set_key(cfg.get(), "mode", hint_mode_name);
      validate(cfg.get());
      DatasetPtr data = load_data(hint_data);
      ModelPtr model = load_model(cfg.get(), hint_ckpt);
      train_into(hint_out, model.get(), data.get(), cfg.get(), HINT_STAGE_FINETUNE,
                 parse_mode(hint_mode_name), hint_epochs);
    } else if (eval->parsed()) {
      ConfigPtr cfg = load_config(eval_cfg);
      validate(cfg.get());
      DatasetPtr data = load_data(eval_data);
      ModelPtr model = load_model(cfg.get(), eval_ckpt);
      const std::string report = evaluate_json(model.get(), data.get());
      if (!eval_report.empty()) write_text(eval_report, report + "\n");
      print_summary(report);
    } else if (sweep->parsed()) {
      ConfigPtr cfg = load_config(sweep_cfg);
      validate(cfg.get());
      const fs::path root(sweep_out);
      ensure_dir(root);
      echo_config(root, cfg.get());
      std::ostringstream csv;
      csv << "frac,seed,ood_accuracy,spearman\n";
      std::cout << csv.str() << std::flush;
      for (const std::string& seed : split_list(sweep_seeds)) {
        set_key(cfg.get(), "seed", seed);
        const fs::path seed_dir = root / ("seed-" + seed);
        ensure_dir(seed_dir);
        const std::string train_path = (seed_dir / "train.jsonl").string();
        const std::string test_path = (seed_dir / "test.jsonl").string();
        check(hint_generate(cfg.get(), train_path.c_str(), test_path.c_str()), "gen");
        DatasetPtr train_set = load_data(train_path);
        DatasetPtr test_set = load_data(test_path);
        hint_model* raw = nullptr;
        check(hint_model_init(cfg.get(), std::stoull(seed), &raw), "init");
        ModelPtr base(raw);
        train_into(seed_dir / "base", base.get(), train_set.get(), cfg.get(),
                   HINT_STAGE_PRETRAIN, HINT_MODE_BASE, std::nullopt);
        for (const std::string& frac : split_list(sweep_fracs)) {
          set_key(cfg.get(), "supervised_fraction", frac);
          hint_model* copy = nullptr;
          check(hint_model_clone(base.get(), &copy), "clone");
          ModelPtr tuned(copy);
          const fs::path run_dir = seed_dir / ("frac-" + frac);
          train_into(run_dir, tuned.get(), train_set.get(), cfg.get(), HINT_STAGE_FINETUNE,
                     parse_mode(sweep_mode), std::nullopt);
          const std::string report = evaluate_json(tuned.get(), test_set.get());
          write_text(run_dir / "report.json", report + "\n");
          const auto r = nlohmann::json::parse(report);
          std::ostringstream row;
          row << frac << ',' << seed << ',' << nlohmann::json(r["accuracy"]).dump() << ','
              << r["spearman_grad_human"].dump() << '\n';
          csv << row.str();
          std::cout << row.str() << std::flush;
        }
      }
      if (!sweep_csv.empty()) write_text(sweep_csv, csv.str());
    } else if (explain->parsed()) {
      ConfigPtr cfg = load_config(explain_cfg);
      validate(cfg.get());
      DatasetPtr data = load_data(explain_data);
      ModelPtr model = load_model(cfg.get(), explain_ckpt);
      char* s = nullptr;
      check(hint_explain(model.get(), data.get(), explain_id.c_str(), &s), "explain");
      std::cout << take(s) << '\n';
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return 0;
}
