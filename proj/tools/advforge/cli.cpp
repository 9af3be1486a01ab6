// Copyright 2026 The advforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "advforge/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "advforge/attack_engine.hpp"
#include "advforge/corpus.hpp"
#include "advforge/errors.hpp"
#include "advforge/evaluation.hpp"
#include "advforge/http_clients.hpp"
#include "advforge/log.hpp"
#include "advforge/model_clients.hpp"
#include "advforge/numeric_format.hpp"
#include "advforge/prompt_builder.hpp"
#include "advforge/utf8.hpp"

namespace advforge::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kHeuristicMock = "heuristic";

// Bad flag values; the message names the flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raw values as parsed from flags and the optional config file.
struct Flags {
  std::string dataset;
  std::string format;
  std::optional<std::string> text;
  bool use_stdin = false;

  std::string llm_url;
  std::string llm_model;
  double llm_temperature = 0.7;
  int llm_max_tokens = 256;
  std::string clf_url;
  int timeout_ms = 60000;
  int retries = 3;
  std::string mock_llm;
  std::string mock_clf;
  std::string prompt_template;

  std::optional<int> max_change;
  int max_updates = 50;
  double threshold = 0.5;
  int abort_after = 25;
  int parallelism = 1;

  std::string out;
  std::string report;
  std::vector<std::string> series;
  std::vector<std::string> names;
  std::vector<std::string> logs;
  std::optional<std::uint64_t> seed;
  bool deterministic = false;
  bool dry_run = false;
  bool redact = false;
};

struct LlmSettings {
  enum class Kind { kScript, kHeuristic, kOpenAi } kind = Kind::kOpenAi;
  std::vector<std::string> script;
  HttpEndpoint endpoint;
  GenerationParams params;
};

struct ClassifierSettings {
  enum class Kind { kLexicon, kHttp } kind = Kind::kHttp;
  HttpEndpoint endpoint;
};

struct RunConfig {
  AttackConfig attack;
  LlmSettings llm;
  ClassifierSettings classifier;
  Lexicon lexicon;
  PromptTemplate prompt = PromptTemplate::canonical();
  std::string corpus_path;
  std::optional<CorpusFormat> corpus_format;
  int parallelism = 1;
  std::string out_path;
  bool deterministic = false;
  std::optional<std::uint64_t> seed;
  std::string label;
};

AttackConfig attack_config_from(const Flags& flags) {
  AttackConfig config;
  config.success_threshold = flags.threshold;
  config.max_updates = flags.max_updates;
  config.max_consecutive_invalid = flags.abort_after;
  config.max_change = flags.max_change;
  if (!(flags.threshold > 0.0 && flags.threshold < 1.0)) {
    throw UsageError("--threshold must lie strictly between 0 and 1");
  }
  if (flags.max_updates < 1) throw UsageError("--max-updates must be >= 1");
  if (flags.abort_after < 1) throw UsageError("--abort-after must be >= 1");
  if (flags.max_change && *flags.max_change < 1) {
    throw UsageError("--max-change must be >= 1");
  }
  return config;
}

RunConfig build_run_config(const Flags& flags) {
  RunConfig config;
  config.attack = attack_config_from(flags);
  if (flags.parallelism < 1) throw UsageError("--parallelism must be >= 1");
  config.parallelism = flags.parallelism;
  config.deterministic = flags.deterministic;
  config.seed = flags.seed;
  config.out_path = flags.out;
  config.corpus_path = flags.dataset;

  if (!flags.prompt_template.empty()) {
    try {
      config.prompt = load_prompt_template(flags.prompt_template);
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--prompt-template: ") + e.what());
    }
  }
  if (flags.timeout_ms < 1) throw UsageError("--timeout-ms must be >= 1");
  if (flags.retries < 0) throw UsageError("--retries must be >= 0");

  if (!flags.mock_llm.empty() && !flags.llm_url.empty()) {
    throw UsageError("--mock-llm and --llm-url are mutually exclusive");
  }
  if (!flags.mock_clf.empty() && !flags.clf_url.empty()) {
    throw UsageError("--mock-clf and --clf-url are mutually exclusive");
  }
  if (flags.deterministic && !flags.llm_url.empty()) {
    throw UsageError("--deterministic forbids network clients (--llm-url)");
  }
  if (flags.deterministic && !flags.clf_url.empty()) {
    throw UsageError("--deterministic forbids network clients (--clf-url)");
  }

  if (!flags.mock_clf.empty()) {
    try {
      config.lexicon = load_lexicon(flags.mock_clf);
    } catch (const IoError& e) {
      throw UsageError(std::string("--mock-clf: ") + e.what());
    }
    config.classifier.kind = ClassifierSettings::Kind::kLexicon;
  } else if (!flags.clf_url.empty()) {
    config.classifier.kind = ClassifierSettings::Kind::kHttp;
    config.classifier.endpoint.base_url = flags.clf_url;
    config.classifier.endpoint.api_key = env_api_key(kClassifierKeyEnv);
    config.classifier.endpoint.timeout =
        std::chrono::milliseconds(flags.timeout_ms);
    config.classifier.endpoint.retry.max_retries = flags.retries;
  } else {
    throw UsageError("a classifier is required: pass --clf-url or --mock-clf");
  }

  LlmSettings& llm = config.llm;
  llm.params.temperature = flags.llm_temperature;
  llm.params.max_tokens = flags.llm_max_tokens;
  llm.params.seed = flags.seed;
  if (flags.mock_llm == kHeuristicMock) {
    if (flags.mock_clf.empty()) {
      throw UsageError(
          "--mock-llm heuristic needs the lexicon given by --mock-clf");
    }
    llm.kind = LlmSettings::Kind::kHeuristic;
    config.label = "mock-heuristic";
  } else if (!flags.mock_llm.empty()) {
    try {
      llm.script = load_completion_script(flags.mock_llm);
    } catch (const IoError& e) {
      throw UsageError(std::string("--mock-llm: ") + e.what());
    }
    llm.kind = LlmSettings::Kind::kScript;
    config.label = "mock-script";
  } else if (!flags.llm_url.empty()) {
    if (flags.llm_model.empty()) {
      throw UsageError("--llm-model is required with --llm-url");
    }
    if (flags.llm_temperature < 0.0) {
      throw UsageError("--llm-temperature must be >= 0");
    }
    if (flags.llm_max_tokens < 1) {
      throw UsageError("--llm-max-tokens must be >= 1");
    }
    llm.kind = LlmSettings::Kind::kOpenAi;
    llm.endpoint.base_url = flags.llm_url;
    llm.endpoint.api_key = env_api_key(kLlmKeyEnv);
    llm.endpoint.timeout = std::chrono::milliseconds(flags.timeout_ms);
    llm.endpoint.retry.max_retries = flags.retries;
    llm.params.model_id = flags.llm_model;
    config.label = flags.llm_model;
  } else {
    throw UsageError("an attacker LLM is required: pass --llm-url or --mock-llm");
  }
  if (!flags.names.empty()) config.label = flags.names.front();
  return config;
}

ClientFactory make_factory(const RunConfig& config) {
  ClientFactory factory;
  const LlmSettings llm = config.llm;
  const Lexicon lexicon = config.lexicon;
  const PromptTemplate prompt = config.prompt;
  switch (llm.kind) {
    case LlmSettings::Kind::kScript:
      factory.llm = [llm](std::size_t) {
        return std::make_unique<ScriptedCompletionClient>(llm.script);
      };
      break;
    case LlmSettings::Kind::kHeuristic:
      factory.llm = [lexicon, prompt](std::size_t) {
        return std::make_unique<HeuristicPerturberClient>(
            lexicon, default_leet_map(), prompt);
      };
      break;
    case LlmSettings::Kind::kOpenAi:
      factory.llm = [llm](std::size_t) {
        return std::make_unique<OpenAiCompletionClient>(llm.endpoint,
                                                        llm.params);
      };
      break;
  }
  const ClassifierSettings classifier = config.classifier;
  if (classifier.kind == ClassifierSettings::Kind::kLexicon) {
    factory.classifier = [lexicon](std::size_t) {
      LexiconClassifierSpec spec;
      spec.lexicon = lexicon;
      return std::make_unique<LexiconClassifier>(std::move(spec));
    };
  } else {
    factory.classifier = [classifier](std::size_t) {
      return std::make_unique<HttpScoringClient>(classifier.endpoint);
    };
  }
  return factory;
}

EngineOptions engine_options(const RunConfig& config) {
  EngineOptions options;
  options.prompt = config.prompt;
  options.record_timestamps = !config.deterministic;
  return options;
}

std::string display_text(std::string_view text, bool redact) {
  if (!redact) return std::string(text);
  return "[redacted " + std::to_string(utf8::length(text)) + " chars]";
}

void print_trace_table(const AttackTrace& trace, bool redact,
                       std::ostream& out) {
  out << std::left << std::setw(6) << "step" << std::setw(9) << "score"
      << std::setw(7) << "dist" << std::setw(10) << "rejected"
      << "text\n";
  out << std::setw(6) << 0 << std::setw(9) << format_fixed(trace.initial_score, 4)
      << std::setw(7) << 0 << std::setw(10) << 0
      << display_text(trace.original_text, redact) << '\n';
  for (const StepRecord& step : trace.steps) {
    out << std::setw(6) << step.index << std::setw(9)
        << format_fixed(step.score, 4) << std::setw(7)
        << step.distance_from_previous << std::setw(10)
        << step.invalid_attempts_before << display_text(step.text, redact)
        << '\n';
  }
  out << std::right;
  out << "outcome: " << to_string(trace.outcome)
      << "  updates: " << trace.steps.size()
      << "  rejected: " << trace.rejected_generations()
      << "  llm_calls: " << trace.llm_calls
      << "  classifier_calls: " << trace.classifier_calls
      << "  final_score: " << format_fixed(trace.final_score, 4) << '\n';
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path.string());
  file << content;
  file.flush();
  if (!file) throw IoError("failed writing " + path.string());
}

ReportFormat report_format_for(const std::string& path) {
  const auto format = report_format_from_extension(path);
  if (!format) {
    throw UsageError("--report: extension must be .csv or .md: " + path);
  }
  return *format;
}

int cmd_attack(const Flags& flags, std::istream& in, std::ostream& out,
               std::ostream& err) {
  if (flags.text && flags.use_stdin) {
    throw UsageError("--text and --stdin are mutually exclusive");
  }
  if (!flags.text && !flags.use_stdin) {
    throw UsageError("attack needs --text or --stdin");
  }
  std::string sample;
  if (flags.text) {
    sample = *flags.text;
  } else {
    sample.assign(std::istreambuf_iterator<char>(in),
                  std::istreambuf_iterator<char>());
    while (!sample.empty() && (sample.back() == '\n' || sample.back() == '\r')) {
      sample.pop_back();
    }
  }
  if (sample.empty()) throw UsageError("--text: sample must not be empty");
  if (sample.find(kSampleDelimiter) != std::string::npos) {
    throw UsageError("--text: sample must not contain '|'");
  }

  const RunConfig config = build_run_config(flags);
  const ClientFactory factory = make_factory(config);
  auto llm = factory.llm(0);
  auto classifier = factory.classifier(0);
  AttackTrace trace =
      run_attack(sample, config.attack, *llm, *classifier,
                 engine_options(config));
  trace.sample_id = "cli";

  print_trace_table(trace, flags.redact, out);
  if (!config.out_path.empty()) {
    write_run_log(std::span<const AttackTrace>(&trace, 1), config.out_path);
  }
  switch (trace.outcome) {
    case Outcome::kSuccess:
      return kExitSuccess;
    case Outcome::kMaxUpdates:
    case Outcome::kAborted:
      return kExitNotSucceeded;
    case Outcome::kClientError:
      err << "error: ClientError: " << trace.error.value_or("unknown") << '\n';
      return kExitFault;
  }
  return kExitFault;
}

int cmd_campaign(const Flags& flags, std::ostream& out, std::ostream& err) {
  if (flags.dataset.empty()) throw UsageError("campaign needs --dataset");
  RunConfig config = build_run_config(flags);
  if (!flags.format.empty()) {
    config.corpus_format = parse_corpus_format(flags.format);
    if (!config.corpus_format) {
      throw UsageError("--format must be csv or jsonl");
    }
  } else {
    config.corpus_format = corpus_format_from_extension(flags.dataset);
    if (!config.corpus_format) {
      throw UsageError("--format is required for dataset " + flags.dataset);
    }
  }
  std::optional<ReportFormat> report_format;
  if (!flags.report.empty()) report_format = report_format_for(flags.report);
  if (flags.series.size() > 1) {
    throw UsageError("--series takes a single path for campaign");
  }

  const std::vector<CorpusRecord> loaded =
      load_corpus(config.corpus_path, *config.corpus_format);
  FilterResult filtered = filter_platform_markers(loaded);
  std::vector<CorpusRecord> corpus;
  std::size_t delimited = 0;
  for (CorpusRecord& record : filtered.kept) {
    if (record.text.find(kSampleDelimiter) != std::string::npos) {
      ++delimited;
      continue;
    }
    corpus.push_back(std::move(record));
  }
  err << "corpus: " << loaded.size() << " loaded, " << filtered.dropped_count
      << " dropped (hashtags/mentions), " << delimited
      << " dropped ('|' in text), " << corpus.size() << " kept\n";

  if (flags.dry_run) {
    out << "filtered corpus size: " << corpus.size() << '\n';
    out << "config digest: " << config.attack.digest() << '\n';
    return kExitSuccess;
  }
  if (corpus.empty()) {
    err << "error: no samples left after filtering\n";
    return kExitFault;
  }

  const ClientFactory factory = make_factory(config);
  std::vector<AttackTrace> traces;
  bool all_failed = false;
  auto progress = [&err, total = corpus.size()](std::size_t index,
                                                 const AttackTrace& trace) {
    err << "[" << index + 1 << "/" << total << "] " << trace.sample_id << ' '
        << to_string(trace.outcome) << " steps=" << trace.steps.size()
        << " final_score=" << format_fixed(trace.final_score, 4) << '\n';
  };
  try {
    traces = run_campaign(corpus, config.attack, factory, config.parallelism,
                          engine_options(config), progress);
  } catch (const CampaignFailed& failed) {
    traces = failed.traces();
    all_failed = true;
    err << "error: " << failed.what() << '\n';
  }

  if (!config.out_path.empty()) write_run_log(traces, config.out_path);

  const ReportRow row{config.label, config.attack.max_change,
                      summarize(traces)};
  out << render_report(std::span<const ReportRow>(&row, 1),
                       ReportFormat::kMarkdown);
  if (report_format) {
    write_text_file(flags.report,
                    render_report(std::span<const ReportRow>(&row, 1),
                                  *report_format));
  }
  if (!flags.series.empty()) {
    write_text_file(flags.series.front(),
                    render_series_csv(sorted_ratio_series(traces)));
  }
  return all_failed ? kExitFault : kExitSuccess;
}

int cmd_report(const Flags& flags, std::ostream& out, std::ostream& err) {
  if (flags.logs.empty()) throw UsageError("report needs at least one --log");
  if (flags.names.size() > flags.logs.size()) {
    throw UsageError("--name given more often than --log");
  }
  if (!flags.series.empty() && flags.series.size() != flags.logs.size()) {
    throw UsageError("--series must be given once per --log");
  }
  std::optional<ReportFormat> report_format;
  if (!flags.report.empty()) report_format = report_format_for(flags.report);

  std::vector<ReportRow> rows;
  for (std::size_t i = 0; i < flags.logs.size(); ++i) {
    const std::string& path = flags.logs[i];
    std::vector<AttackTrace> traces;
    try {
      traces = read_run_log(path);
    } catch (const ParseError& e) {
      err << "error: run log " << path << ": " << e.what() << '\n';
      return kExitFault;
    }
    if (traces.empty()) {
      err << "error: run log " << path << " holds no traces\n";
      return kExitFault;
    }
    ReportRow row;
    if (i < flags.names.size()) {
      row.name = flags.names[i];
    } else if (!traces.front().model.empty()) {
      row.name = traces.front().model;
    } else {
      row.name = fs::path(path).stem().string();
    }
    row.max_change = traces.front().max_change;
    row.summary = summarize(traces);
    rows.push_back(std::move(row));
    if (!flags.series.empty()) {
      write_text_file(flags.series[i],
                      render_series_csv(sorted_ratio_series(traces)));
    }
  }
  out << render_report(rows, ReportFormat::kMarkdown);
  if (report_format) {
    write_text_file(flags.report, render_report(rows, *report_format));
  }
  return kExitSuccess;
}

void add_shared_options(CLI::App& app, Flags& flags) {
  app.add_option("--dataset", flags.dataset, "Corpus file (csv or jsonl)");
  app.add_option("--format", flags.format, "Corpus format: csv or jsonl");
  app.add_option("--text", flags.text, "Sample to attack");
  app.add_flag("--stdin", flags.use_stdin, "Read the sample from stdin");

  app.add_option("--llm-url", flags.llm_url,
                 "Base URL of an OpenAI-compatible server");
  app.add_option("--llm-model", flags.llm_model, "Attacker model id");
  app.add_option("--llm-temperature", flags.llm_temperature,
                 "Sampling temperature")
      ->capture_default_str();
  app.add_option("--llm-max-tokens", flags.llm_max_tokens,
                 "Completion token limit")
      ->capture_default_str();
  app.add_option("--clf-url", flags.clf_url, "Base URL of the classifier");
  app.add_option("--timeout-ms", flags.timeout_ms, "Per-request timeout")
      ->capture_default_str();
  app.add_option("--retries", flags.retries,
                 "Retries on transient transport failures")
      ->capture_default_str();
  app.add_option("--mock-llm", flags.mock_llm,
                 "'heuristic' or a completion script file");
  app.add_option("--mock-clf", flags.mock_clf,
                 "Lexicon file for the offline classifier");
  app.add_option("--prompt-template", flags.prompt_template,
                 "Prompt template override file");

  app.add_option("--max-change", flags.max_change,
                 "Per-step Levenshtein cap (default: unlimited)");
  app.add_option("--max-updates", flags.max_updates, "Accepted-update cap")
      ->capture_default_str();
  app.add_option("--threshold", flags.threshold, "Success score threshold")
      ->capture_default_str();
  app.add_option("--abort-after", flags.abort_after,
                 "Consecutive invalid generations before aborting")
      ->capture_default_str();
  app.add_option("--parallelism", flags.parallelism, "Concurrent attacks")
      ->capture_default_str();

  app.add_option("--out", flags.out, "Run log path");
  app.add_option("--report", flags.report, "Report path (.csv or .md)");
  app.add_option("--series", flags.series,
                 "Sorted distance-ratio series CSV path");
  app.add_option("--name", flags.names, "Report row label");
  app.add_option("--log", flags.logs, "Run log to summarize");
  app.add_option("--seed", flags.seed, "Seed forwarded to the LLM");
  app.add_flag("--deterministic", flags.deterministic,
               "Offline clients only; omit timestamps from logs");
  app.add_flag("--dry-run", flags.dry_run,
               "Load and filter the corpus, print the config digest, exit");
  app.add_flag("--redact", flags.redact,
               "Mask sample text in standard-output tables");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Flags flags;
  CLI::App app{"advforge: LLM-driven character-level adversarial examples",
               "advforge"};
  app.fallthrough();
  app.set_config("--config", "", "Config file (TOML keys mirror flag names)");
  add_shared_options(app, flags);
  CLI::App* attack = app.add_subcommand("attack", "Attack a single sample");
  CLI::App* campaign =
      app.add_subcommand("campaign", "Attack every sample of a corpus");
  CLI::App* report =
      app.add_subcommand("report", "Summarize existing run logs");
  app.require_subcommand(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (attack->parsed()) return cmd_attack(flags, in, out, err);
    if (campaign->parsed()) return cmd_campaign(flags, out, err);
    if (report->parsed()) return cmd_report(flags, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SchemaVersionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitFault;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFault;
  }
  return kExitUsage;
}

}  // namespace advforge::cli
