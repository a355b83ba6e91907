// Copyright 2026 The STAR Toolkit Authors
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
#include "star/commands.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "star/config.hpp"
#include "star/dataset.hpp"
#include "star/io.hpp"
#include "star/kernels.hpp"
#include "star/linker.hpp"
#include "star/metrics.hpp"
#include "star/parallel.hpp"

namespace star::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kSampler =
    "mt19937_64 seeded with seed XOR fnv1a64(label); partial Fisher-Yates over the class's "
    "videos sorted by id, bounds drawn by rejection; selection emitted in id order";

std::string num(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::logic_error("number formatting failed");
  return std::string(buf, end);
}

// Bin edges are products like 3 * 0.05; trim the representation noise for display.
double edge(std::size_t k, double width) {
  return std::round(static_cast<double>(k) * width * 1e9) / 1e9;
}

void write_json(const fs::path& p, const ordered_json& j) { io::write_file_atomic(p, j.dump(2) + "\n"); }

ordered_json with_schema(const char* command) {
  ordered_json j;
  j["schema_version"] = io::kSchemaVersion;
  j["command"] = command;
  return j;
}

std::string histograms_csv(const DatasetStats& st) {
  std::string s = "histogram,bin_lo,bin_hi,count\n";
  auto emit = [&](const char* name, const Histogram& h) {
    for (std::size_t k = 0; k < h.counts.size(); ++k) {
      s += std::string(name) + "," + num(edge(k, h.bin_width)) + "," +
           num(std::min(1.0, edge(k + 1, h.bin_width))) + "," + std::to_string(h.counts[k]) + "\n";
    }
  };
  emit("temporal_ratio", st.temporal);
  emit("spatial_ratio", st.spatial);
  return s;
}

ordered_json stats_json(const DatasetStats& st) {
  ordered_json j;
  j["class_count"] = st.class_count;
  j["video_count"] = st.video_count;
  j["mean_temporal_ratio"] = st.mean_temporal_ratio;
  j["mean_spatial_ratio"] = st.mean_spatial_ratio;
  j["bin_width"] = st.temporal.bin_width;
  j["temporal_histogram"] = st.temporal.counts;
  j["spatial_histogram"] = st.spatial.counts;
  return j;
}

// Options shared by every subcommand.
struct Common {
  std::string config_path;
  std::string out_dir;
};

Config base_config(const Common& c) {
  return c.config_path.empty() ? Config{} : load_config(c.config_path);
}

fs::path prepare_out(const Common& c) {
  fs::path out(c.out_dir);
  fs::create_directories(out);
  return out;
}

// ---------------------------------------------------------------- build-dataset

struct BuildArgs {
  Common common;
  std::string annotations;
  std::string meta;
  std::string catalog;
  CLI::Option* seed = nullptr;
  CLI::Option* per_class = nullptr;
  CLI::Option* t_range = nullptr;
  CLI::Option* s_range = nullptr;
  CLI::Option* bin_width = nullptr;
  std::uint64_t seed_v = 0;
  std::size_t per_class_v = 0;
  std::vector<double> t_range_v, s_range_v;
  double bin_width_v = 0.0;
};

void build_dataset(const BuildArgs& a) {
  Config cfg = base_config(a.common);
  DatasetConfig& d = cfg.dataset;
  if (a.seed->count()) d.seed = a.seed_v;
  if (a.per_class->count()) d.per_class = a.per_class_v;
  if (a.t_range->count()) d.temporal = {a.t_range_v[0], a.t_range_v[1]};
  if (a.s_range->count()) d.spatial = {a.s_range_v[0], a.s_range_v[1]};
  if (a.bin_width->count()) d.bin_width = a.bin_width_v;
  cfg.validate();

  BuildResult res;
  ordered_json inputs;
  if (!a.catalog.empty()) {
    res = curate(io::read_catalog(a.catalog), d);
    inputs["catalog"] = a.catalog;
  } else {
    if (a.annotations.empty() || a.meta.empty()) {
      throw std::invalid_argument("build-dataset needs --annotations and --meta, or --catalog");
    }
    const auto annos = io::read_object_annotations(a.annotations);
    const auto videos = io::read_video_sources(a.meta);
    res = build_catalog(annos, videos, d);
    inputs["annotations"] = a.annotations;
    inputs["meta"] = a.meta;
  }

  for (const VideoCatalogEntry& e : res.catalog) {
    if (filter_video({e.temporal_ratio, e.spatial_ratio}, d.temporal, d.spatial) !=
        FilterOutcome::kKeep) {
      throw std::logic_error("catalog entry '" + e.meta.video_id + "' fails the ratio filter");
    }
  }

  const DatasetStats st = dataset_stats(res.catalog, d.bin_width);
  const fs::path out = prepare_out(a.common);

  std::string rejected;
  for (const Rejection& r : res.rejected) {
    ordered_json j;
    j["schema_version"] = io::kSchemaVersion;
    j["video_id"] = r.video_id;
    j["reason"] = r.reason;
    rejected += j.dump() + "\n";
  }
  std::map<std::string, std::size_t> per_label;
  for (const VideoCatalogEntry& e : res.catalog) ++per_label[e.label];

  ordered_json m = with_schema("build-dataset");
  m["inputs"] = inputs;
  m["dataset"] = config_to_json(cfg)["dataset"];
  m["sampler"] = kSampler;
  m["counts"] = {{"videos_in", res.videos_in},
                 {"synthesized", res.synthesized},
                 {"rejected", res.rejected.size()},
                 {"kept_after_filter", res.kept_after_filter},
                 {"classes_after_filter", res.classes_after_filter},
                 {"classes", st.class_count},
                 {"videos", st.video_count}};
  m["classes"] = per_label;
  m["stats"] = stats_json(st);

  io::write_file_atomic(out / "catalog.jsonl", io::catalog_jsonl(res.catalog));
  io::write_file_atomic(out / "rejected.jsonl", rejected);
  io::write_file_atomic(out / "histograms.csv", histograms_csv(st));
  write_json(out / "manifest.json", m);
  std::cout << "catalog: " << st.class_count << " classes, " << st.video_count << " videos ("
            << res.rejected.size() << " rejected)\n";
}

// ---------------------------------------------------------------- link

struct LinkArgs {
  Common common;
  std::string proposals;
  std::string frame_dets;
  CLI::Option* ttk = nullptr;
  CLI::Option* stk = nullptr;
  CLI::Option* tnms = nullptr;
  CLI::Option* snms = nullptr;
  CLI::Option* no_suppress = nullptr;
  CLI::Option* empty = nullptr;
  std::size_t ttk_v = 0, stk_v = 0;
  double tnms_v = 0.0, snms_v = 0.0;
  std::string empty_v;
};

void link(const LinkArgs& a) {
  Config cfg = base_config(a.common);
  LinkerConfig& l = cfg.linker;
  if (a.ttk->count()) l.temporal_top_k = a.ttk_v;
  if (a.stk->count()) l.spatial_top_k = a.stk_v;
  if (a.tnms->count()) l.temporal_nms = a.tnms_v;
  if (a.snms->count()) l.spatial_nms = a.snms_v;
  if (a.no_suppress->count()) l.suppress = false;
  if (a.empty->count()) l.empty_frames = parse_empty_frame_policy(a.empty_v);
  cfg.validate();

  const auto proposals = io::read_proposals(a.proposals);
  const auto frames = io::read_frame_detections(a.frame_dets);
  std::map<std::string, const FrameIndex*> by_id;
  for (const VideoFrameDetections& v : frames) by_id[v.video_id] = &v.frames;

  std::vector<TubeDetection> tubes;
  std::size_t n_props = 0, n_rejected = 0;
  ordered_json diags = ordered_json::array();
  for (const VideoProposalSet& v : proposals) {
    auto it = by_id.find(v.video_id);
    if (it == by_id.end()) {
      throw io::InputError("proposal references unknown video '" + v.video_id + "'");
    }
    DetectionSet ds = build_detections(v.proposals, *it->second, l);
    n_props += v.proposals.size();
    n_rejected += ds.diagnostics.size();
    for (const LinkDiagnostic& dg : ds.diagnostics) {
      diags.push_back({{"video_id", v.video_id}, {"proposal", dg.proposal}, {"message", dg.message}});
    }
    for (Tube& t : ds.tubes) tubes.push_back({v.video_id, std::move(t)});
  }

  const fs::path out = prepare_out(a.common);
  ordered_json m = with_schema("link");
  m["inputs"] = {{"proposals", a.proposals}, {"frame_detections", a.frame_dets}};
  m["linker"] = config_to_json(cfg)["linker"];
  m["counts"] = {{"videos", proposals.size()},
                 {"proposals", n_props},
                 {"tubes", tubes.size()},
                 {"unlinked_proposals", n_rejected}};
  m["diagnostics"] = diags;
  io::write_file_atomic(out / "tubes.jsonl", io::tubes_jsonl(tubes));
  write_json(out / "manifest.json", m);
  std::cout << "linked " << tubes.size() << " tubes from " << n_props << " proposals\n";
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  Common common;
  std::string detections;
  std::string gt;
  std::string metric = "video";
  CLI::Option* alpha = nullptr;
  CLI::Option* ap_mode = nullptr;
  CLI::Option* per_video = nullptr;
  std::vector<double> alpha_v;
  std::string ap_mode_v;
};

ordered_json report_json(const EvalReport& r) {
  ordered_json j;
  j["alpha"] = r.alpha;
  j["map"] = r.map;
  ordered_json cls = ordered_json::array();
  for (const ClassAp& c : r.classes) {
    cls.push_back({{"class_id", c.class_id},
                   {"num_gt", c.num_gt},
                   {"num_det", c.num_det},
                   {"num_tp", c.num_tp},
                   {"ap", c.ap}});
  }
  j["classes"] = cls;
  ordered_json vids = ordered_json::array();
  for (const VideoDiagnostics& v : r.videos) {
    vids.push_back({{"video_id", v.video_id},
                    {"num_gt", v.num_gt},
                    {"num_det", v.num_det},
                    {"num_tp", v.num_tp}});
  }
  j["videos"] = vids;
  return j;
}

void csv_reports(std::string& csv, const char* metric, const std::vector<EvalReport>& rs) {
  for (const EvalReport& r : rs) {
    for (const ClassAp& c : r.classes) {
      csv += std::string(metric) + "," + std::to_string(c.class_id) + "," + num(r.alpha) + "," +
             num(c.ap) + "\n";
    }
    csv += std::string(metric) + ",all," + num(r.alpha) + "," + num(r.map) + "\n";
  }
}

void eval(const EvalArgs& a) {
  Config cfg = base_config(a.common);
  EvalSettings& e = cfg.eval;
  if (a.ap_mode->count()) e.ap_mode = parse_ap_mode(a.ap_mode_v);
  if (a.per_video->count()) e.frame_per_video = true;
  if (a.alpha->count()) {
    if (a.metric == "temporal") e.temporal_alphas = a.alpha_v;
    else if (a.metric == "ar") e.ar_thresholds = a.alpha_v;
    else e.alphas = a.alpha_v;
  }
  cfg.validate();
  const EvalOptions opts{e.ap_mode, e.frame_per_video};

  const auto gts = io::read_ground_truth(a.gt);
  ordered_json rep = with_schema("eval");
  rep["metric"] = a.metric;
  rep["ap_mode"] = ap_mode_name(e.ap_mode);
  std::string csv = "metric,class,alpha,value\n";
  std::size_t unknown = 0;

  if (a.metric == "video" || a.metric == "frame") {
    const auto dets = io::read_tubes(a.detections);
    std::vector<EvalReport> rs(e.alphas.size());
    for (std::size_t i = 0; i < e.alphas.size(); ++i) {
      rs[i] = a.metric == "video" ? video_map(dets, gts, e.alphas[i], opts)
                                  : frame_map(dets, gts, e.alphas[i], opts);
    }
    ordered_json results = ordered_json::array();
    for (const EvalReport& r : rs) results.push_back(report_json(r));
    rep["results"] = results;
    if (a.metric == "frame") rep["frame_per_video"] = e.frame_per_video;
    unknown = rs.empty() ? 0 : rs[0].unknown_class_detections;
    csv_reports(csv, a.metric.c_str(), rs);
    for (const EvalReport& r : rs) {
      std::cout << a.metric << " mAP@" << num(r.alpha) << " = " << num(r.map) << "\n";
    }
  } else if (a.metric == "temporal") {
    const auto dets = io::read_tubes(a.detections);
    const TemporalReport t = temporal_map(dets, gts, e.temporal_alphas, opts);
    ordered_json results = ordered_json::array();
    for (const EvalReport& r : t.per_alpha) results.push_back(report_json(r));
    rep["results"] = results;
    rep["average_map"] = t.average_map;
    unknown = t.per_alpha.empty() ? 0 : t.per_alpha[0].unknown_class_detections;
    csv_reports(csv, "temporal", t.per_alpha);
    ordered_json hl = ordered_json::object();
    for (double h : {0.5, 0.7}) {
      for (const EvalReport& r : t.per_alpha) {
        if (r.alpha == h) {
          csv += "temporal_highlight,all," + num(h) + "," + num(r.map) + "\n";
          hl[num(h)] = r.map;
        }
      }
    }
    rep["highlights"] = hl;
    std::cout << "temporal mAP averaged over " << t.per_alpha.size()
              << " thresholds = " << num(t.average_map) << "\n";
  } else if (a.metric == "ar") {
    const auto props = io::read_agnostic_proposals(a.detections);
    const RecallReport r = average_recall(props, gts, e.ar_thresholds, e.ar_max_budget);
    rep["thresholds"] = r.thresholds;
    rep["recall"] = r.recall;
    rep["average_recall"] = r.average_recall;
    rep["num_gt"] = r.num_gt;
    ordered_json curve = ordered_json::array();
    for (const RecallCurvePoint& p : r.curve) {
      curve.push_back({{"budget", p.budget},
                       {"avg_proposals", p.avg_proposals},
                       {"average_recall", p.average_recall}});
    }
    rep["curve"] = curve;
    for (std::size_t i = 0; i < r.thresholds.size(); ++i) {
      csv += "recall,all," + num(r.thresholds[i]) + "," + num(r.recall[i]) + "\n";
    }
    csv += "average_recall,all,," + num(r.average_recall) + "\n";
    std::cout << "AR = " << num(r.average_recall) << " over " << r.num_gt << " ground truths\n";
  } else {
    throw std::invalid_argument("unknown metric '" + a.metric + "'");
  }

  if (a.metric != "ar") {
    rep["unknown_class_detections"] = unknown;
    if (unknown > 0) {
      std::cerr << "star: warning: " << unknown
                << " detections name classes absent from the ground truth; counted as false "
                   "positives of no class\n";
    }
  }
  rep["eval"] = config_to_json(cfg)["eval"];

  const fs::path out = prepare_out(a.common);
  write_json(out / "report.json", rep);
  io::write_file_atomic(out / "report.csv", csv);
}

// ---------------------------------------------------------------- stats

struct StatsArgs {
  Common common;
  std::string catalog;
  CLI::Option* bin_width = nullptr;
  double bin_width_v = 0.0;
};

void stats(const StatsArgs& a) {
  Config cfg = base_config(a.common);
  if (a.bin_width->count()) cfg.dataset.bin_width = a.bin_width_v;
  cfg.validate();
  const auto catalog = io::read_catalog(a.catalog);
  const DatasetStats st = dataset_stats(catalog, cfg.dataset.bin_width);
  const fs::path out = prepare_out(a.common);
  ordered_json j = with_schema("stats");
  j["catalog"] = a.catalog;
  j.update(stats_json(st));
  write_json(out / "stats.json", j);
  io::write_file_atomic(out / "histograms.csv", histograms_csv(st));
  std::cout << st.class_count << " classes, " << st.video_count
            << " videos, mean temporal ratio " << num(st.mean_temporal_ratio) << "\n";
}

// ---------------------------------------------------------------- gen-synth

struct SynthArgs {
  Common common;
  std::string spec;
  CLI::Option* seed = nullptr;
  std::uint64_t seed_v = 0;
};

void gen_synth(const SynthArgs& a) {
  ScenarioSpec spec;
  if (!a.spec.empty()) {
    std::ifstream in(a.spec);
    if (!in) throw io::InputError("cannot open '" + a.spec + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
      spec = scenario_from_json(j);
    } catch (const std::exception& e) {
      throw io::InputError(a.spec + ": " + e.what());
    }
  }
  if (a.seed->count()) spec.seed = a.seed_v;
  spec.validate();
  const SyntheticCorpus c = generate_corpus(spec);

  const fs::path out = prepare_out(a.common);
  io::write_file_atomic(out / "gt.jsonl", io::ground_truth_jsonl(c.gts));
  io::write_file_atomic(out / "tubes.jsonl", io::tubes_jsonl(c.dets));
  io::write_file_atomic(out / "frame_dets.jsonl", io::frame_detections_jsonl(c.frame_dets));
  io::write_file_atomic(out / "proposals.jsonl", io::proposals_jsonl(c.proposals));
  ordered_json m = with_schema("gen-synth");
  m["spec"] = scenario_to_json(spec);
  m["counts"] = {{"videos", c.gts.size()}, {"detections", c.dets.size()}};
  write_json(out / "manifest.json", m);
  std::cout << "generated " << c.gts.size() << " videos, " << c.dets.size() << " detections\n";
}

}  // namespace

ScenarioSpec scenario_from_json(const nlohmann::json& j) {
  ScenarioSpec s;
  if (!j.is_object()) throw std::invalid_argument("scenario spec must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const nlohmann::json& v = it.value();
    if (k == "seed") s.seed = v.get<std::uint64_t>();
    else if (k == "num_videos") s.num_videos = v.get<int>();
    else if (k == "num_classes") s.num_classes = v.get<int>();
    else if (k == "min_frames") s.min_frames = v.get<int>();
    else if (k == "max_frames") s.max_frames = v.get<int>();
    else if (k == "width") s.width = v.get<int>();
    else if (k == "height") s.height = v.get<int>();
    else if (k == "fps") s.fps = v.get<double>();
    else if (k == "tubes_per_video") s.tubes_per_video = v.get<int>();
    else if (k == "min_tube_fraction") s.min_tube_fraction = v.get<double>();
    else if (k == "max_tube_fraction") s.max_tube_fraction = v.get<double>();
    else if (k == "max_speed") s.max_speed = v.get<double>();
    else if (k == "noise") {
      for (auto n = v.begin(); n != v.end(); ++n) {
        const std::string& nk = n.key();
        const double x = n.value().get<double>();
        if (nk == "jitter_sigma") s.noise.jitter_sigma = x;
        else if (nk == "score_noise") s.noise.score_noise = x;
        else if (nk == "fp_rate") s.noise.fp_rate = x;
        else if (nk == "fn_rate") s.noise.fn_rate = x;
        else if (nk == "segment_jitter") s.noise.segment_jitter = x;
        else throw std::invalid_argument("unknown noise key '" + nk + "'");
      }
    } else {
      throw std::invalid_argument("unknown scenario key '" + k + "'");
    }
  }
  s.validate();
  return s;
}

nlohmann::json scenario_to_json(const ScenarioSpec& s) {
  nlohmann::json j;
  j["seed"] = s.seed;
  j["num_videos"] = s.num_videos;
  j["num_classes"] = s.num_classes;
  j["min_frames"] = s.min_frames;
  j["max_frames"] = s.max_frames;
  j["width"] = s.width;
  j["height"] = s.height;
  j["fps"] = s.fps;
  j["tubes_per_video"] = s.tubes_per_video;
  j["min_tube_fraction"] = s.min_tube_fraction;
  j["max_tube_fraction"] = s.max_tube_fraction;
  j["max_speed"] = s.max_speed;
  j["noise"] = {{"jitter_sigma", s.noise.jitter_sigma},
                {"score_noise", s.noise.score_noise},
                {"fp_rate", s.noise.fp_rate},
                {"fn_rate", s.noise.fn_rate},
                {"segment_jitter", s.noise.segment_jitter}};
  return j;
}

int run(int argc, const char* const* argv) {
  CLI::App app{"Spatio-temporal action detection toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  std::string simd;
  app.add_option("--threads", threads, "Worker threads (default: STAR_NUM_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--simd", simd, "IoU kernel backend: scalar, avx2 or neon");

  auto common = [](CLI::App* sub, Common& c, bool out_required = true) {
    sub->add_option("--config", c.config_path, "JSON config file")->check(CLI::ExistingFile);
    auto* o = sub->add_option("--out-dir", c.out_dir, "Output directory");
    if (out_required) o->required();
  };

  BuildArgs b;
  auto* build = app.add_subcommand("build-dataset", "Curate a catalog from object annotations");
  common(build, b.common);
  build->add_option("--annotations", b.annotations, "Object annotation JSONL");
  build->add_option("--meta", b.meta, "Video metadata JSONL with labels");
  build->add_option("--catalog", b.catalog, "Re-curate an existing catalog instead");
  b.seed = build->add_option("--seed", b.seed_v, "Sampling seed");
  b.per_class = build->add_option("--per-class", b.per_class_v, "Videos kept per class");
  b.t_range = build->add_option("--temporal-range", b.t_range_v, "lo hi")->expected(2);
  b.s_range = build->add_option("--spatial-range", b.s_range_v, "lo hi")->expected(2);
  b.bin_width = build->add_option("--bin-width", b.bin_width_v, "Histogram bin width");

  LinkArgs l;
  auto* lnk = app.add_subcommand("link", "Link frame detections into tubes");
  common(lnk, l.common);
  lnk->add_option("--proposals", l.proposals, "Classified proposal JSONL")->required();
  lnk->add_option("--frame-dets", l.frame_dets, "Frame detection JSONL")->required();
  l.ttk = lnk->add_option("--temporal-top-k", l.ttk_v, "Proposals kept per class (300)");
  l.stk = lnk->add_option("--spatial-top-k", l.stk_v, "Boxes kept per frame (50)");
  l.tnms = lnk->add_option("--temporal-nms", l.tnms_v, "Proposal NMS IoU (0.4)");
  l.snms = lnk->add_option("--spatial-nms", l.snms_v, "Box NMS IoU (0.2)");
  l.no_suppress = lnk->add_flag("--no-suppress", "Inputs are already suppressed");
  l.empty = lnk->add_option("--empty-frames", l.empty_v, "carry-forward or interpolate");

  EvalArgs e;
  auto* ev = app.add_subcommand("eval", "Evaluate detections against ground truth");
  common(ev, e.common);
  ev->add_option("--detections", e.detections, "Tube (or proposal, for ar) JSONL")->required();
  ev->add_option("--gt", e.gt, "Ground-truth JSONL")->required();
  ev->add_option("--metric", e.metric, "video, frame, temporal or ar")
      ->check(CLI::IsMember({"video", "frame", "temporal", "ar"}));
  e.alpha = ev->add_option("--alpha", e.alpha_v, "Overlap threshold(s)");
  e.ap_mode = ev->add_option("--ap-mode", e.ap_mode_v, "all-point or 11-point");
  e.per_video = ev->add_flag("--frame-per-video", "Frame mAP averaged per video");

  StatsArgs s;
  auto* st = app.add_subcommand("stats", "Ratio histograms of a catalog");
  common(st, s.common);
  st->add_option("--catalog", s.catalog, "Catalog JSONL")->required();
  s.bin_width = st->add_option("--bin-width", s.bin_width_v, "Histogram bin width");

  SynthArgs g;
  auto* gs = app.add_subcommand("gen-synth", "Generate a synthetic corpus");
  common(gs, g.common);
  gs->add_option("--spec", g.spec, "Scenario JSON");
  g.seed = gs->add_option("--seed", g.seed_v, "Overrides the scenario seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (threads > 0) set_num_threads(threads);
    if (!simd.empty()) {
      const auto be = kernels::parse_backend(simd);
      if (!be || !kernels::set_backend(*be)) {
        throw std::invalid_argument("kernel backend '" + simd + "' is not available");
      }
    }
    if (build->parsed()) build_dataset(b);
    else if (lnk->parsed()) link(l);
    else if (ev->parsed()) eval(e);
    else if (st->parsed()) stats(s);
    else if (gs->parsed()) gen_synth(g);
    return kExitOk;
  } catch (const io::InputError& err) {
    std::cerr << "star: error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& err) {
    std::cerr << "star: error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const nlohmann::json::exception& err) {
    std::cerr << "star: error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const fs::filesystem_error& err) {
    std::cerr << "star: error: " << err.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& err) {
    std::cerr << "star: internal error: " << err.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace star::cli
