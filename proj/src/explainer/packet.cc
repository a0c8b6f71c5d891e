// Copyright 2026 The Burnscreen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "explainer/packet.h"

#include <algorithm>
#include <cmath>

#include "common/hash.h"
#include "common/io.h"
#include "common/status_macros.h"
#include "common/strings.h"
#include "common/text.h"

namespace burnscreen::explainer {

namespace {

constexpr std::string_view kContinuation = "##";

nlohmann::json ContentJson(const AttributionPacket& packet) {
  nlohmann::json labels = nlohmann::json::object();
  for (const auto& [name, label] : packet.source.olbi_labels) {
    labels[std::string(olbi::CutoffId(name))] = LabelValue(label);
  }
  nlohmann::json tokens = nlohmann::json::array();
  for (const TokenAttribution& t : packet.tokens) {
    tokens.push_back(
        {{"token", t.token}, {"id", t.id}, {"score", t.score}, {"special", t.special}});
  }
  nlohmann::json words = nlohmann::json::array();
  for (const WordAttribution& w : packet.words) {
    words.push_back({{"word", w.word},
                     {"score", w.score},
                     {"first_token", w.first_token},
                     {"end_token", w.end_token}});
  }
  return {
      {"text", packet.source.text},
      {"respondent_id", packet.source.respondent_id},
      {"question_id", packet.source.question_id},
      {"olbi_labels", labels},
      {"model", packet.source.model_name},
      {"dataset", packet.source.dataset_name},
      {"prediction",
       {{"label", LabelValue(packet.predicted)}, {"score", packet.positive_score}}},
      {"tokens", tokens},
      {"words", words},
      {"f_input", packet.f_input},
      {"f_baseline", packet.f_baseline},
      {"residual", packet.residual},
      {"steps", packet.steps},
      {"method", packet.method},
      {"warnings", packet.warnings},
  };
}

std::string ScoreStyle(double score, double scale) {
  const double alpha = scale > 0.0 ? std::min(1.0, std::abs(score) / scale) : 0.0;
  if (score >= 0.0) return fmt::format("rgba(214,69,65,{:.3f})", alpha);
  return fmt::format("rgba(52,120,214,{:.3f})", alpha);
}

// Prefix of at most `limit` bytes that does not split a UTF-8 sequence.
std::string_view Utf8Prefix(std::string_view s, size_t limit) {
  if (s.size() <= limit) return s;
  size_t end = limit;
  while (end > 0 && (static_cast<unsigned char>(s[end]) & 0xC0) == 0x80) --end;
  return s.substr(0, end);
}

std::string LabelCell(Label label) {
  return text::EscapeHtml(LabelDisplayName(label));
}

}  // namespace

std::vector<WordAttribution> MergeWordPieces(
    std::span<const TokenAttribution> tokens) {
  std::vector<WordAttribution> words;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const TokenAttribution& t = tokens[i];
    if (t.special) continue;
    const bool continues = t.token.starts_with(kContinuation) && !words.empty() &&
                           words.back().end_token == static_cast<int>(i);
    if (continues) {
      words.back().word += t.token.substr(kContinuation.size());
      words.back().score += t.score;
      words.back().end_token = static_cast<int>(i) + 1;
      continue;
    }
    words.push_back({t.token, t.score, static_cast<int>(i),
                     static_cast<int>(i) + 1});
  }
  return words;
}

absl::StatusOr<AttributionPacket> BuildPacket(const PacketSource& source,
                                              const Attribution& attribution) {
  if (attribution.tokens.empty()) {
    return absl::InvalidArgumentError(
        "refusing to build a packet without attribution scores");
  }
  AttributionPacket packet;
  packet.source = source;
  packet.predicted = attribution.target;
  packet.positive_score = attribution.positive_score;
  packet.tokens = attribution.tokens;
  packet.words = MergeWordPieces(packet.tokens);
  packet.f_input = attribution.f_input;
  packet.f_baseline = attribution.f_baseline;
  packet.residual = attribution.residual;
  packet.steps = attribution.steps;
  packet.method = StrCat("integrated-gradients/", AttributionLayerName(attribution.layer),
                         "/", AttributionOutputName(attribution.output), "/",
                         QuadratureRuleName(attribution.rule));
  if (attribution.truncated) {
    packet.warnings.push_back(
        "text exceeded the encoder length and was truncated before attribution");
  }
  packet.id = Sha256Hex(ContentJson(packet).dump());
  return packet;
}

nlohmann::json PacketToJson(const AttributionPacket& packet) {
  nlohmann::json json = ContentJson(packet);
  json["id"] = packet.id;
  return json;
}

absl::StatusOr<AttributionPacket> PacketFromJson(const nlohmann::json& json) {
  AttributionPacket packet;
  try {
    packet.id = json.at("id").get<std::string>();
    packet.source.text = json.at("text").get<std::string>();
    packet.source.respondent_id = json.at("respondent_id").get<std::string>();
    packet.source.question_id = json.at("question_id").get<std::string>();
    packet.source.model_name = json.at("model").get<std::string>();
    packet.source.dataset_name = json.at("dataset").get<std::string>();
    for (const auto& [key, value] : json.at("olbi_labels").items()) {
      const auto name = olbi::ParseCutoffId(key);
      const auto label = LabelFromInt(value.get<long long>());
      if (!name || !label) {
        return absl::InvalidArgumentError(StrCat("bad olbi label entry '", key, "'"));
      }
      packet.source.olbi_labels[*name] = *label;
    }
    const auto predicted =
        LabelFromInt(json.at("prediction").at("label").get<long long>());
    if (!predicted) return absl::InvalidArgumentError("bad predicted label");
    packet.predicted = *predicted;
    packet.positive_score = json.at("prediction").at("score").get<double>();
    for (const nlohmann::json& t : json.at("tokens")) {
      packet.tokens.push_back({t.at("token").get<std::string>(), t.at("id").get<int>(),
                               t.at("score").get<double>(),
                               t.at("special").get<bool>()});
    }
    for (const nlohmann::json& w : json.at("words")) {
      packet.words.push_back({w.at("word").get<std::string>(),
                              w.at("score").get<double>(),
                              w.at("first_token").get<int>(),
                              w.at("end_token").get<int>()});
    }
    packet.f_input = json.at("f_input").get<double>();
    packet.f_baseline = json.at("f_baseline").get<double>();
    packet.residual = json.at("residual").get<double>();
    packet.steps = json.at("steps").get<int>();
    packet.method = json.at("method").get<std::string>();
    packet.warnings = json.at("warnings").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(StrCat("malformed packet: ", e.what()));
  }
  if (packet.tokens.empty()) {
    return absl::InvalidArgumentError("packet has no attribution scores");
  }
  if (Sha256Hex(ContentJson(packet).dump()) != packet.id) {
    return absl::DataLossError(StrCat("packet ", packet.id, " does not match its content"));
  }
  return packet;
}

std::string RenderPacketHtml(const AttributionPacket& packet) {
  double scale = 0.0;
  for (const WordAttribution& w : packet.words) {
    scale = std::max(scale, std::abs(w.score));
  }
  std::string out =
      "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>Packet " +
      packet.id.substr(0, 12) +
      "</title>\n<style>body{font-family:sans-serif;max-width:52em;margin:2em "
      "auto}span.w{padding:0 2px;border-radius:3px}table{border-collapse:"
      "collapse}td,th{border:1px solid #999;padding:4px 8px}</style></head>\n"
      "<body>\n";
  out += "<h1>Attribution packet</h1>\n";
  out += "<p class=\"meta\">id " + packet.id + "<br>model " +
         text::EscapeHtml(packet.source.model_name) + " / dataset " +
         text::EscapeHtml(packet.source.dataset_name) + "</p>\n";
  out += "<table class=\"labels\"><tr><th>Questionnaire label</th><th>Model "
         "label</th></tr>\n<tr><td>";
  if (packet.source.olbi_labels.empty()) {
    out += "not available";
  } else {
    bool first = true;
    for (const auto& [name, label] : packet.source.olbi_labels) {
      if (!first) out += "<br>";
      first = false;
      out += text::EscapeHtml(olbi::CutoffDisplayName(name)) + ": " +
             LabelCell(label);
    }
  }
  out += "</td><td>" + LabelCell(packet.predicted) +
         fmt::format(" (p = {:.3f})", packet.positive_score) + "</td></tr></table>\n";
  out += "<p class=\"text\">";
  for (size_t i = 0; i < packet.words.size(); ++i) {
    const WordAttribution& w = packet.words[i];
    if (i > 0) out += " ";
    out += fmt::format("<span class=\"w\" style=\"background:{}\" title=\"{:+.4f}\">",
                       ScoreStyle(w.score, scale), w.score) +
           text::EscapeHtml(w.word) + "</span>";
  }
  out += "</p>\n";
  out += fmt::format(
      "<p class=\"check\">completeness residual {:.4f} (f(input) {:.4f}, "
      "f(baseline) {:.4f}, {} steps, {})</p>\n",
      packet.residual, packet.f_input, packet.f_baseline, packet.steps,
      text::EscapeHtml(packet.method));
  for (const std::string& warning : packet.warnings) {
    out += "<p class=\"warning\">" + text::EscapeHtml(warning) + "</p>\n";
  }
  out += "</body></html>\n";
  return out;
}

absl::Status WritePackets(std::span<const AttributionPacket> packets,
                          const std::filesystem::path& jsonl_path) {
  std::string out;
  for (const AttributionPacket& packet : packets) {
    out += PacketToJson(packet).dump();
    out.push_back('\n');
  }
  return io::WriteFileAtomic(jsonl_path, out);
}

absl::StatusOr<std::vector<AttributionPacket>> LoadPackets(
    const std::filesystem::path& jsonl_path) {
  BURNSCREEN_ASSIGN_OR_RETURN(std::string contents, io::ReadFile(jsonl_path));
  BURNSCREEN_ASSIGN_OR_RETURN(auto records,
                              io::ParseJsonLines(contents, jsonl_path.string()));
  std::vector<AttributionPacket> packets;
  for (const nlohmann::json& record : records) {
    BURNSCREEN_ASSIGN_OR_RETURN(AttributionPacket packet, PacketFromJson(record));
    packets.push_back(std::move(packet));
  }
  return packets;
}

absl::Status WritePacketViews(std::span<const AttributionPacket> packets,
                              const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(
        StrCat("cannot create ", dir.string(), ": ", ec.message()));
  }
  std::string index =
      "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>Packets"
      "</title></head>\n<body>\n<h1>Attribution packets</h1>\n<ul>\n";
  for (const AttributionPacket& packet : packets) {
    BURNSCREEN_RETURN_IF_ERROR(io::WriteFileAtomic(dir / (packet.id + ".html"),
                                                   RenderPacketHtml(packet)));
    index += "<li><a href=\"" + packet.id + ".html\">" +
             text::EscapeHtml(Utf8Prefix(packet.source.text, 80)) + "</a> (" +
             LabelCell(packet.predicted) + ")</li>\n";
  }
  index += "</ul>\n</body></html>\n";
  return io::WriteFileAtomic(dir / "index.html", index);
}

}  // namespace burnscreen::explainer
