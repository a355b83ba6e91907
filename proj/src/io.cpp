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
#include "star/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace star::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void check_schema(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
  auto it = j.find("schema_version");
  if (it == j.end()) return;
  if (!it->is_string()) throw std::invalid_argument("schema_version must be a string");
  const std::string v = it->get<std::string>();
  const std::string major = v.substr(0, v.find('.'));
  if (major != kSchemaVersion.substr(0, kSchemaVersion.find('.'))) {
    throw std::invalid_argument("unsupported schema_version '" + v + "'");
  }
}

int get_int(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw std::invalid_argument(std::string(key) + " must be an integer");
  return v.get<int>();
}

double get_num(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw std::invalid_argument(std::string(key) + " must be a number");
  return v.get<double>();
}

std::string get_str(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_string()) throw std::invalid_argument(std::string(key) + " must be a string");
  return v.get<std::string>();
}

Box box_from(const json& v) {
  if (!v.is_array() || v.size() != 4) throw std::invalid_argument("box must be [x1, y1, x2, y2]");
  for (const json& x : v) {
    if (!x.is_number()) throw std::invalid_argument("box coordinates must be numbers");
  }
  return Box(v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>());
}

Segment segment_from(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    throw std::invalid_argument("segment must be [start, end] integers");
  }
  return Segment(v[0].get<int>(), v[1].get<int>());
}

std::vector<Box> boxes_from(const json& v) {
  if (!v.is_array()) throw std::invalid_argument("boxes must be an array");
  std::vector<Box> out;
  out.reserve(v.size());
  for (const json& b : v) out.push_back(box_from(b));
  return out;
}

VideoMeta meta_from(const json& j) {
  VideoMeta m{get_str(j, "video_id"), get_int(j, "num_frames"), get_int(j, "width"),
              get_int(j, "height"), get_num(j, "fps")};
  m.validate();
  return m;
}

ordered_json box_json(const Box& b) { return ordered_json::array({b.x1(), b.y1(), b.x2(), b.y2()}); }

ordered_json segment_json(const Segment& s) { return ordered_json::array({s.start(), s.end()}); }

ordered_json boxes_json(const std::vector<Box>& boxes) {
  ordered_json a = ordered_json::array();
  for (const Box& b : boxes) a.push_back(box_json(b));
  return a;
}

ordered_json header(const std::string& video_id) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["video_id"] = video_id;
  return j;
}

void put_meta(ordered_json& j, const VideoMeta& m) {
  j["num_frames"] = m.num_frames;
  j["width"] = m.width;
  j["height"] = m.height;
  j["fps"] = m.fps;
}

void duplicate(const std::set<std::string>& seen, const std::string& id) {
  if (seen.count(id)) throw std::invalid_argument("duplicate record for video '" + id + "'");
}

}  // namespace

std::string dump_line(const json& j) { return j.dump() + "\n"; }

void for_each_record(const std::filesystem::path& path,
                     const std::function<void(const json&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      check_schema(j);
      fn(j);
    } catch (const std::exception& e) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.bad()) throw InputError("error reading '" + path.string() + "'");
}

std::vector<VideoAnnotation> read_ground_truth(const std::filesystem::path& path) {
  std::vector<VideoAnnotation> out;
  std::set<std::string> seen;
  for_each_record(path, [&](const json& j) {
    VideoAnnotation a;
    a.meta = meta_from(j);
    duplicate(seen, a.meta.video_id);
    for (const json& t : j.at("tubes")) {
      a.tubes.emplace_back(get_int(t, "class_id"), 1.0, segment_from(t.at("segment")),
                           boxes_from(t.at("boxes")));
    }
    a.validate();
    seen.insert(a.meta.video_id);
    out.push_back(std::move(a));
  });
  return out;
}

std::vector<TubeDetection> read_tubes(const std::filesystem::path& path) {
  std::vector<TubeDetection> out;
  for_each_record(path, [&](const json& j) {
    out.push_back({get_str(j, "video_id"),
                   Tube(get_int(j, "class_id"), get_num(j, "score"), segment_from(j.at("segment")),
                        boxes_from(j.at("boxes")))});
  });
  return out;
}

std::vector<VideoFrameDetections> read_frame_detections(const std::filesystem::path& path) {
  std::vector<VideoFrameDetections> out;
  std::set<std::string> seen;
  for_each_record(path, [&](const json& j) {
    VideoFrameDetections v;
    v.video_id = get_str(j, "video_id");
    duplicate(seen, v.video_id);
    for (const json& f : j.at("frames")) {
      FrameDetections fd;
      fd.frame = get_int(f, "frame");
      if (fd.frame < 0) throw std::invalid_argument("negative frame index");
      for (const json& b : f.at("boxes")) {
        fd.boxes.push_back({box_from(b.at("box")), get_num(b, "score"), fd.frame});
      }
      if (!v.frames.emplace(fd.frame, std::move(fd)).second) {
        throw std::invalid_argument("frame " + std::to_string(f.at("frame").get<int>()) +
                                    " listed twice");
      }
    }
    seen.insert(v.video_id);
    out.push_back(std::move(v));
  });
  return out;
}

std::vector<VideoProposalSet> read_proposals(const std::filesystem::path& path) {
  std::map<std::string, std::vector<ClassifiedProposal>> by_video;
  for_each_record(path, [&](const json& j) {
    by_video[get_str(j, "video_id")].push_back(
        {segment_from(j.at("segment")), get_int(j, "class_id"), get_num(j, "score")});
  });
  std::vector<VideoProposalSet> out;
  for (auto& [id, p] : by_video) out.push_back({id, std::move(p)});
  return out;
}

std::vector<VideoProposal> read_agnostic_proposals(const std::filesystem::path& path) {
  std::vector<VideoProposal> out;
  for_each_record(path, [&](const json& j) {
    out.push_back({get_str(j, "video_id"), segment_from(j.at("segment")), get_num(j, "score")});
  });
  return out;
}

std::vector<FrameObjectAnnotation> read_object_annotations(const std::filesystem::path& path) {
  std::vector<FrameObjectAnnotation> out;
  for_each_record(path, [&](const json& j) {
    const json& rel = j.at("relevant");
    if (!rel.is_boolean()) throw std::invalid_argument("relevant must be a boolean");
    const json& obj = j.at("object_id");
    out.push_back({get_str(j, "video_id"), get_int(j, "frame"),
                   obj.is_string() ? obj.get<std::string>() : obj.dump(), box_from(j.at("box")),
                   rel.get<bool>()});
  });
  return out;
}

std::vector<VideoSource> read_video_sources(const std::filesystem::path& path) {
  std::vector<VideoSource> out;
  for_each_record(path, [&](const json& j) { out.push_back({meta_from(j), get_str(j, "label")}); });
  return out;
}

std::vector<VideoCatalogEntry> read_catalog(const std::filesystem::path& path) {
  std::vector<VideoCatalogEntry> out;
  std::set<std::string> seen;
  for_each_record(path, [&](const json& j) {
    VideoCatalogEntry e{meta_from(j), get_str(j, "label"),
                        Tube(0, 1.0, segment_from(j.at("segment")), boxes_from(j.at("boxes"))),
                        get_num(j, "temporal_ratio"), get_num(j, "spatial_ratio")};
    duplicate(seen, e.meta.video_id);
    VideoAnnotation{e.meta, {e.tube}}.validate();
    seen.insert(e.meta.video_id);
    out.push_back(std::move(e));
  });
  return out;
}

std::string ground_truth_jsonl(std::span<const VideoAnnotation> gts) {
  std::string s;
  for (const VideoAnnotation& a : gts) {
    ordered_json j = header(a.meta.video_id);
    put_meta(j, a.meta);
    ordered_json tubes = ordered_json::array();
    for (const Tube& t : a.tubes) {
      tubes.push_back({{"class_id", t.class_id()},
                       {"segment", segment_json(t.segment())},
                       {"boxes", boxes_json(t.boxes())}});
    }
    j["tubes"] = std::move(tubes);
    s += j.dump() + "\n";
  }
  return s;
}

std::string tubes_jsonl(std::span<const TubeDetection> tubes) {
  std::string s;
  for (const TubeDetection& d : tubes) {
    ordered_json j = header(d.video_id);
    j["class_id"] = d.tube.class_id();
    j["score"] = d.tube.score();
    j["segment"] = segment_json(d.tube.segment());
    j["boxes"] = boxes_json(d.tube.boxes());
    s += j.dump() + "\n";
  }
  return s;
}

std::string frame_detections_jsonl(std::span<const VideoFrameDetections> frames) {
  std::string s;
  for (const VideoFrameDetections& v : frames) {
    ordered_json j = header(v.video_id);
    ordered_json fs = ordered_json::array();
    for (const auto& [f, fd] : v.frames) {
      ordered_json boxes = ordered_json::array();
      for (const ScoredBox& b : fd.boxes) {
        boxes.push_back({{"box", box_json(b.box)}, {"score", b.score}});
      }
      fs.push_back({{"frame", f}, {"boxes", std::move(boxes)}});
    }
    j["frames"] = std::move(fs);
    s += j.dump() + "\n";
  }
  return s;
}

std::string proposals_jsonl(std::span<const VideoProposalSet> proposals) {
  std::string s;
  for (const VideoProposalSet& v : proposals) {
    for (const ClassifiedProposal& p : v.proposals) {
      ordered_json j = header(v.video_id);
      j["class_id"] = p.class_id;
      j["score"] = p.cls_score;
      j["segment"] = segment_json(p.segment);
      s += j.dump() + "\n";
    }
  }
  return s;
}

std::string object_annotations_jsonl(std::span<const FrameObjectAnnotation> annos) {
  std::string s;
  for (const FrameObjectAnnotation& a : annos) {
    ordered_json j = header(a.video_id);
    j["frame"] = a.frame;
    j["object_id"] = a.object_id;
    j["box"] = box_json(a.box);
    j["relevant"] = a.relevant;
    s += j.dump() + "\n";
  }
  return s;
}

std::string video_sources_jsonl(std::span<const VideoSource> videos) {
  std::string s;
  for (const VideoSource& v : videos) {
    ordered_json j = header(v.meta.video_id);
    put_meta(j, v.meta);
    j["label"] = v.label;
    s += j.dump() + "\n";
  }
  return s;
}

std::string catalog_jsonl(std::span<const VideoCatalogEntry> catalog) {
  std::string s;
  for (const VideoCatalogEntry& e : catalog) {
    ordered_json j = header(e.meta.video_id);
    put_meta(j, e.meta);
    j["label"] = e.label;
    j["segment"] = segment_json(e.tube.segment());
    j["boxes"] = boxes_json(e.tube.boxes());
    j["temporal_ratio"] = e.temporal_ratio;
    j["spatial_ratio"] = e.spatial_ratio;
    s += j.dump() + "\n";
  }
  return s;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw InputError("error writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InputError("cannot move output into '" + path.string() + "': " + ec.message());
  }
}

}  // namespace star::io
