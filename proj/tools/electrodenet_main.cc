// Copyright 2026 The ElectrodeNet Authors.
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

// electrodenet: train, encode, vocode, score and run experiment grids.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error, 3 audio not at
// 16 kHz.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "electrodenet/ace.h"
#include "electrodenet/binary_io.h"
#include "electrodenet/correlation.h"
#include "electrodenet/corpus.h"
#include "electrodenet/csv.h"
#include "electrodenet/electrodogram.h"
#include "electrodenet/enet.h"
#include "electrodenet/errors.h"
#include "electrodenet/experiment.h"
#include "electrodenet/ncm.h"
#include "electrodenet/nn/model_io.h"
#include "electrodenet/stoi.h"
#include "electrodenet/synth.h"
#include "electrodenet/vocoder.h"
#include "electrodenet/wav.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using namespace electrodenet;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON config files: top-level keys set global options, objects named
// after a subcommand set that subcommand's options.
class ConfigJson : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(input);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    Collect(j, {}, items);
    return items;
  }

 private:
  static void Collect(const nlohmann::json& j, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        Collect(value, p, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      auto text = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(text(v));
      } else {
        item.inputs.push_back(text(value));
      }
      items.push_back(std::move(item));
    }
  }
};

struct Globals {
  uint64_t seed = 1;
  int jobs = 1;
  std::string out_dir;
};

Globals g;

std::string OutPath(const std::string& p) {
  if (p.empty() || g.out_dir.empty() || fs::path(p).is_absolute()) return p;
  return (fs::path(g.out_dir) / p).string();
}

void EnsureParent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  EnsureParent(path);
  WriteFileBytes(path, text);
}

std::vector<std::string> ManifestInputs(const std::string& manifest, const std::string& split) {
  const auto entries = ReadManifest(manifest);
  std::vector<std::string> paths = ManifestPaths(entries, split);
  if (paths.empty()) {
    throw UsageError("manifest " + manifest + " has no entries" +
                     (split.empty() ? "" : " in split '" + split + "'"));
  }
  return paths;
}

// Options shared by encode and vocode.
struct StrategyFlags {
  std::string strategy = "ace";
  std::string model;
  int n = 12;
  double saturation = 1.0;
  std::string allocation;

  void Add(CLI::App* cmd) {
    cmd->add_option("--strategy", strategy, "ace, enet or enet-cs")
        ->check(CLI::IsMember({"ace", "enet", "enet-cs"}))
        ->capture_default_str();
    cmd->add_option("--model", model, "ENET model file for enet / enet-cs");
    cmd->add_option("--n", n, "maxima per frame (ace, enet)")->check(CLI::Range(1, 22))->capture_default_str();
    cmd->add_option("--saturation", saturation, "LGF saturation level")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--allocation", allocation, "channel allocation table");
  }

  StrategyConfig Config() const {
    StrategyConfig cfg;
    if (!allocation.empty()) cfg.allocation = LoadAllocation(allocation);
    cfg.num_maxima = n;
    return cfg;
  }

  Electrodogram Encode(const std::vector<double>& samples) const {
    StrategySpec spec;
    spec.name = strategy;
    spec.kind = ParseStrategyKind(strategy);
    spec.model_path = model;
    spec.n = n;
    if (spec.kind != StrategyKind::kAce && model.empty()) {
      throw UsageError("--strategy " + strategy + " needs --model");
    }
    return Strategy::Load(spec).Encode(samples, Config(), MappingConfig::FromSaturation(saturation));
  }
};

bool IsElgrFile(const std::string& path) {
  std::string head = ReadFileBytes(path).substr(0, 4);
  return head == "ELGR";
}

void AddTrain(CLI::App& app) {
  auto* cmd = app.add_subcommand("train", "train an ElectrodeNet model on ACE envelopes");
  struct Opts {
    std::string manifest, split, arch = "dnn", out = "model.enet", loss_csv, target = "m";
    int epochs = 100, batch = 128, seq_len = 32, n_topk = 12, n = 12;
    double lr = 1e-4;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--manifest", o->manifest, "training manifest")->required();
  cmd->add_option("--split", o->split, "use only entries with this split tag");
  cmd->add_option("--arch", o->arch, "dnn, cnn, lstm, dnn-cs, dnn-cs-vt")
      ->check(CLI::IsMember({"dnn", "cnn", "lstm", "dnn-cs", "dnn-cs-vt"}))
      ->capture_default_str();
  cmd->add_option("--epochs", o->epochs)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--lr", o->lr)->check(CLI::NonNegativeNumber)->capture_default_str();
  cmd->add_option("--batch-size", o->batch)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--seq-len", o->seq_len)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--n-topk", o->n_topk, "CS layer budget")->check(CLI::Range(1, 22))->capture_default_str();
  cmd->add_option("--target", o->target, "m (all channels) or n-of-m")
      ->check(CLI::IsMember({"m", "n-of-m"}))
      ->capture_default_str();
  cmd->add_option("--n", o->n, "maxima kept by n-of-m targets")->check(CLI::Range(1, 22))->capture_default_str();
  cmd->add_option("--out", o->out, "model file")->capture_default_str();
  cmd->add_option("--loss-csv", o->loss_csv, "loss history (default <out>.loss.csv)");
  cmd->callback([o] {
    StrategyConfig cfg;
    const auto paths = ManifestInputs(o->manifest, o->split);
    DistillationDataset ds = BuildDatasetFromFiles(paths, cfg, o->manifest);
    for (const auto& e : ds.errors) std::cerr << "skipped " << e << "\n";
    std::cerr << "dataset: " << ds.num_utterances() << " utterances, " << ds.pair_count()
              << " frame pairs\n";
    if (ds.pair_count() == 0) throw InvalidArgument("no usable training audio");
    TrainOptions opts;
    opts.arch = nn::ParseArch(o->arch);
    opts.n_topk = o->n_topk;
    opts.num_maxima = o->n;
    opts.train.epochs = o->epochs;
    opts.train.learning_rate = o->lr;
    opts.train.batch_size = o->batch;
    opts.train.sequence_length = o->seq_len;
    opts.train.seed = g.seed;
    opts.train.target_mode = o->target == "m" ? nn::TargetMode::kMChannels : nn::TargetMode::kNOfM;
    nn::TrainHistory history;
    nn::Network net = TrainDistilled(ds, opts, &history, [](int epoch, double loss) {
      std::cerr << "epoch " << epoch + 1 << " loss " << loss << "\n";
    });
    const std::string out = OutPath(o->out);
    EnsureParent(out);
    nn::SaveNetwork(out, net);
    CsvTable loss;
    loss.header = SplitString(kLossHistoryHeader, ',');
    for (size_t e = 0; e < history.epoch_loss.size(); ++e) {
      loss.rows.push_back({std::to_string(e + 1), FormatDouble(history.epoch_loss[e])});
    }
    const std::string loss_path = o->loss_csv.empty() ? out + ".loss.csv" : OutPath(o->loss_csv);
    WriteText(loss_path, loss.ToString());
    std::cerr << "wrote " << out << " (" << net.ParamCount() << " parameters)\n";
  });
}

void AddEncode(CLI::App& app) {
  auto* cmd = app.add_subcommand("encode", "encode a 16 kHz WAV into an electrodogram");
  struct Opts {
    std::string in, out, emit;
    StrategyFlags strategy;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--in", o->in, "input WAV")->required();
  cmd->add_option("--out", o->out, "output file")->required();
  cmd->add_option("--emit", o->emit, "elgr or csv (default from the output extension)")
      ->check(CLI::IsMember({"elgr", "csv"}));
  o->strategy.Add(cmd);
  cmd->callback([o] {
    const Electrodogram elgr = o->strategy.Encode(ReadMonoWav16k(o->in));
    std::string emit = o->emit;
    if (emit.empty()) emit = fs::path(o->out).extension() == ".csv" ? "csv" : "elgr";
    const std::string out = OutPath(o->out);
    EnsureParent(out);
    if (emit == "csv") {
      WriteText(out, ElectrodogramCsv(elgr));
    } else {
      WriteElectrodogram(out, elgr);
    }
  });
}

void AddVocode(CLI::App& app) {
  auto* cmd = app.add_subcommand("vocode", "tone-vocode a WAV (encoding it first) or an ELGR file");
  struct Opts {
    std::string in, out, envelope = "auto";
    double rms = 0.05;
    bool no_normalize = false;
    StrategyFlags strategy;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--in", o->in, "input WAV or ELGR")->required();
  cmd->add_option("--out", o->out, "output WAV")->required();
  cmd->add_option("--envelope", o->envelope, "auto, pre (pre-LGF) or post (post-LGF)")
      ->check(CLI::IsMember({"auto", "pre", "post"}))
      ->capture_default_str();
  cmd->add_option("--rms", o->rms, "output RMS")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_flag("--no-normalize", o->no_normalize, "keep envelope units");
  o->strategy.Add(cmd);
  cmd->callback([o] {
    Electrodogram elgr = IsElgrFile(o->in) ? ReadElectrodogram(o->in)
                                           : o->strategy.Encode(ReadMonoWav16k(o->in));
    VocoderConfig voc = VocoderConfig::ForStrategy(o->strategy.Config());
    if (o->envelope == "post" || (o->envelope == "auto" && !elgr.has_envelopes())) {
      voc.envelope_source = EnvelopeSource::kPostLgf;
    }
    voc.rms_target = o->rms;
    if (o->no_normalize) voc.normalization = OutputNormalization::kNone;
    voc.Validate(o->strategy.Config());
    const std::string out = OutPath(o->out);
    EnsureParent(out);
    WriteWav(out, Vocode(elgr, voc), kSampleRate, WavFormat::kPcm16);
  });
}

void AddScore(CLI::App& app) {
  auto* cmd = app.add_subcommand("score", "STOI / NCM of a processed signal against clean speech");
  struct Opts {
    std::string clean, processed, out;
    std::vector<std::string> predictors = {"stoi", "ncm"};
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--clean", o->clean)->required();
  cmd->add_option("--processed", o->processed)->required();
  cmd->add_option("--predictor", o->predictors, "stoi and/or ncm")->capture_default_str();
  cmd->add_option("--out", o->out, "CSV output (default stdout)");
  cmd->callback([o] {
    const auto clean = ReadMonoWav16k(o->clean);
    const auto processed = ReadMonoWav16k(o->processed);
    CsvTable t;
    t.header = {"predictor", "score"};
    for (const auto& p : ParsePredictors(o->predictors)) {
      t.rows.push_back({p, FormatDouble(p == "stoi" ? Stoi(clean, processed) : Ncm(clean, processed))});
    }
    WriteText(OutPath(o->out), t.ToString());
  });
}

void AddCorrelate(CLI::App& app) {
  auto* cmd = app.add_subcommand("correlate", "MSE / LCC / SRCC between two strategies' scores");
  struct Opts {
    std::string scores, a, b, out;
    std::vector<std::string> predictors;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--scores", o->scores, "score table CSV")->required();
  cmd->add_option("--a", o->a, "reference strategy")->required();
  cmd->add_option("--b", o->b, "compared strategy")->required();
  cmd->add_option("--predictor", o->predictors, "default: every predictor in the table");
  cmd->add_option("--out", o->out, "CSV output (default stdout)");
  cmd->callback([o] {
    const auto records = ReadScoreTable(o->scores);
    std::set<std::string> predictors(o->predictors.begin(), o->predictors.end());
    std::set<std::string> noises;
    for (const auto& r : records) {
      if (o->predictors.empty()) predictors.insert(r.predictor);
      noises.insert(r.noise);
    }
    std::vector<CorrelationReport> reports;
    for (const auto& p : predictors) {
      for (const auto& n : noises) {
        std::vector<ScoreRecord> subset;
        for (const auto& r : records) {
          if (r.noise == n) subset.push_back(r);
        }
        auto rs = PerSnrBreakdown(PairScores(subset, p, o->a, o->b),
                                  "predictor=" + p + ";a=" + o->a + ";b=" + o->b + ";noise=" + n + ";");
        reports.insert(reports.end(), rs.begin(), rs.end());
      }
    }
    WriteText(OutPath(o->out), CorrelationCsv(reports).ToString());
  });
}

void AddRunExperiment(CLI::App& app) {
  auto* cmd = app.add_subcommand("run-experiment", "run a resumable strategy x noise x SNR grid");
  auto plan_path = std::make_shared<std::string>();
  cmd->add_option("--plan", *plan_path, "JSON plan")->required();
  cmd->callback([plan_path] {
    ExperimentPlan plan = LoadPlan(*plan_path);
    if (!g.out_dir.empty()) plan.out_dir = g.out_dir;
    const ExperimentResult r = RunExperiment(plan, g.jobs, &std::cerr);
    std::cerr << "cells: " << r.cells_total << " total, " << r.cells_computed << " computed, "
              << r.cells_reused << " reused, " << r.failures.size() << " failed\n";
    for (const auto& rep : r.pooled) {
      std::cerr << rep.grouping << " n=" << rep.n << " mse=" << rep.mse << " lcc=" << rep.lcc
                << " srcc=" << rep.srcc << "\n";
    }
    if (!r.failures.empty()) {
      for (const auto& f : r.failures) std::cerr << "failed " << f << "\n";
      throw std::runtime_error(std::to_string(r.failures.size()) + " cells failed");
    }
  });
}

void AddCsStats(CLI::App& app) {
  auto* cmd = app.add_subcommand("cs-stats", "histogram of channels selected per frame");
  struct Opts {
    std::vector<std::string> files;
    int n_topk = 12;
    std::string out;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("files", o->files, "ELGR files");
  cmd->add_option("--n-topk", o->n_topk)->check(CLI::Range(1, 22))->capture_default_str();
  cmd->add_option("--out", o->out, "CSV output (default stdout)");
  cmd->callback([o] {
    if (o->files.empty()) throw UsageError("cs-stats needs at least one ELGR file");
    CsUsageStats total;
    total.n_topk = o->n_topk;
    for (const auto& f : o->files) total.Merge(CsUsage(ReadElectrodogram(f), o->n_topk));
    total.Finalize();
    WriteText(OutPath(o->out), total.ToCsv());
    std::cerr << "frames " << total.frames << ": < N_topk " << total.pct_below << "%, = N_topk "
              << total.pct_equal << "%, > N_topk " << total.pct_above << "%\n";
  });
}

void AddFitSsn(CLI::App& app) {
  auto* cmd = app.add_subcommand("fit-ssn", "fit a speech-shaped noise filter to a corpus");
  struct Opts {
    std::string manifest, split, out = "ssn.json", tag;
    int taps = 512;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--manifest", o->manifest)->required();
  cmd->add_option("--split", o->split, "use only entries with this split tag");
  cmd->add_option("--taps", o->taps)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--tag", o->tag, "noise label in score tables");
  cmd->add_option("--out", o->out, "noise spec JSON; taps go next to it")->capture_default_str();
  cmd->callback([o] {
    std::vector<Utterance> corpus;
    for (const auto& p : ManifestInputs(o->manifest, o->split)) {
      corpus.push_back({p, ReadMonoWav16k(p)});
    }
    NoiseSpec spec = FitSsn(corpus, g.seed, o->taps);
    spec.tag = o->tag;
    const std::string out = OutPath(o->out);
    EnsureParent(out);
    SaveNoiseSpec(out, spec);
  });
}

void AddMix(CLI::App& app) {
  auto* cmd = app.add_subcommand("mix", "mix clean speech with noise at an SNR");
  struct Opts {
    std::string clean, noise, noise_kind, out, snr;
    long offset = -1;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--clean", o->clean)->required();
  auto* spec_opt = cmd->add_option("--noise", o->noise, "noise spec JSON");
  cmd->add_option("--noise-kind", o->noise_kind, "white (no spec file needed)")
      ->check(CLI::IsMember({"white"}))
      ->excludes(spec_opt);
  cmd->add_option("--snr", o->snr, "dB or 'quiet'")->required();
  cmd->add_option("--offset", o->offset, "noise crop offset (default seeded)");
  cmd->add_option("--out", o->out)->required();
  cmd->callback([o] {
    const auto clean = ReadMonoWav16k(o->clean);
    double snr;
    try {
      snr = ParseSnr(o->snr);
    } catch (const std::exception&) {
      throw UsageError("--snr must be a number or 'quiet'");
    }
    NoiseSpec spec;
    if (!o->noise.empty()) {
      spec = LoadNoiseSpec(o->noise);
    } else if (!o->noise_kind.empty()) {
      spec.kind = NoiseKind::kWhite;
      spec.seed = g.seed;
    } else {
      throw UsageError("mix needs --noise or --noise-kind");
    }
    const NoiseBuffer noise = GenerateNoise(spec, clean.size() + kSampleRate);
    const size_t offset =
        o->offset >= 0 ? static_cast<size_t>(o->offset)
                       : NoiseOffset(g.seed, fs::path(o->clean).stem().string(), spec.label(), snr,
                                     clean.size(), noise.samples.size());
    const std::string out = OutPath(o->out);
    EnsureParent(out);
    WriteWav(out, MixAtSnr(clean, noise.samples, snr, offset), kSampleRate, WavFormat::kFloat32);
    std::cerr << "offset " << offset << (noise.looped ? " (noise looped)" : "") << "\n";
  });
}

void AddSynthCorpus(CLI::App& app) {
  auto* cmd = app.add_subcommand("synth-corpus", "write synthetic speech-like WAVs and a manifest");
  struct Opts {
    int count = 50, lists = 16;
    double duration = 1.2;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--count", o->count)->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--lists", o->lists, "tags L1..Lk, assigned in order")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--duration", o->duration, "seconds")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->callback([o] {
    const std::string dir = g.out_dir.empty() ? "." : g.out_dir;
    fs::create_directories(dir);
    SynthConfig sc;
    sc.duration_s = o->duration;
    std::vector<ManifestEntry> entries;
    const auto corpus = SynthCorpus(o->count, g.seed, sc);
    for (size_t i = 0; i < corpus.size(); ++i) {
      const std::string path = (fs::path(dir) / (corpus[i].id + ".wav")).string();
      WriteWav(path, corpus[i].samples, kSampleRate, WavFormat::kPcm16);
      entries.push_back({path, "L" + std::to_string(i * o->lists / corpus.size() + 1), ""});
    }
    WriteManifest((fs::path(dir) / "manifest.tsv").string(), entries);
  });
}

void AddSplit(CLI::App& app) {
  auto* cmd = app.add_subcommand("split", "split a manifest into train/test by tag");
  struct Opts {
    std::string manifest, rule;
  };
  auto o = std::make_shared<Opts>();
  cmd->add_option("--manifest", o->manifest)->required();
  cmd->add_option("--rule", o->rule, "e.g. train=L9-16")->required();
  cmd->callback([o] {
    const ManifestSplit split = SplitManifest(ReadManifest(o->manifest), o->rule);
    const std::string dir = g.out_dir.empty() ? "." : g.out_dir;
    fs::create_directories(dir);
    WriteManifest((fs::path(dir) / "train.tsv").string(), split.train);
    WriteManifest((fs::path(dir) / "test.tsv").string(), split.test);
    std::cerr << split.train.size() << " train, " << split.test.size() << " test\n";
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ElectrodeNet cochlear-implant coding strategies"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<ConfigJson>());
  app.set_config("--config", "", "JSON config file")->envname("ELECTRODENET_CONFIG");
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out-dir", g.out_dir, "base directory for outputs");

  AddTrain(app);
  AddEncode(app);
  AddVocode(app);
  AddScore(app);
  AddCorrelate(app);
  AddRunExperiment(app);
  AddCsStats(app);
  AddFitSsn(app);
  AddMix(app);
  AddSynthCorpus(app);
  AddSplit(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SampleRateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
