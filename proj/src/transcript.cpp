// Copyright 2026 The qsum Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsum/transcript.hpp"

#include "json.hpp"

#include "qsum/runtime.hpp"

namespace qsum {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::prepare: return "prepare";
    case EventKind::decoy_prepare: return "decoy_prepare";
    case EventKind::shift: return "shift";
    case EventKind::send: return "send";
    case EventKind::deliver: return "deliver";
    case EventKind::decoy_check: return "decoy_check";
    case EventKind::measure: return "measure";
    case EventKind::bell_measure: return "bell_measure";
    case EventKind::observe: return "observe";
    case EventKind::ack: return "ack";
    case EventKind::positions: return "positions";
    case EventKind::mask_disclosure: return "mask_disclosure";
    case EventKind::bell_result: return "bell_result";
    case EventKind::check_result: return "check_result";
    case EventKind::publish: return "publish";
    case EventKind::collusion: return "collusion";
    case EventKind::verify: return "verify";
    case EventKind::abort: return "abort";
    case EventKind::sum: return "sum";
  }
  return "unknown";
}

bool is_quantum(EventKind kind) {
  switch (kind) {
    case EventKind::prepare:
    case EventKind::decoy_prepare:
    case EventKind::shift:
    case EventKind::send:
    case EventKind::deliver:
    case EventKind::decoy_check:
      return true;
    default:
      return false;
  }
}

std::string author_name(int author) {
  if (author == kSystem) return "system";
  if (author == kOutsider) return "outsider";
  if (author == kChannel) return "channel";
  return "A" + std::to_string(author);
}

std::vector<Event> Transcript::filter(bool (*pred)(EventKind)) const {
  std::vector<Event> out;
  for (const auto& e : events_)
    if (pred(e.kind)) out.push_back(e);
  return out;
}

namespace {

ordered_json payload_of(const Event& e) {
  ordered_json p = ordered_json::object();
  switch (e.kind) {
    case EventKind::send:
      p["to"] = author_name(e.peer);
      p["hop"] = e.tag;
      break;
    case EventKind::deliver:
      p["from"] = author_name(e.peer);
      p["hop"] = e.tag;
      break;
    case EventKind::shift:
      p["origin"] = author_name(e.peer);
      p["hop"] = e.tag;
      break;
    case EventKind::measure:
    case EventKind::observe:
      p["origin"] = e.peer == 0 ? std::string("own") : author_name(e.peer);
      p["slot"] = e.tag;
      break;
    case EventKind::decoy_check:
    case EventKind::bell_measure:
    case EventKind::bell_result:
    case EventKind::check_result:
    case EventKind::verify:
    case EventKind::positions:
    case EventKind::ack:
      if (e.peer != 0) p["about"] = author_name(e.peer);
      break;
    case EventKind::mask_disclosure:
      p["about"] = author_name(e.peer);
      p["group"] = e.tag;
      break;
    case EventKind::collusion:
      p["to"] = author_name(e.peer);
      break;
    default:
      break;
  }
  if (!e.note.empty()) p["note"] = e.note;
  p["values"] = e.values;
  return p;
}

}  // namespace

std::string Transcript::to_jsonl() const {
  std::string out;
  for (const auto& e : events_) {
    ordered_json line;
    line["run_id"] = run_id_;
    line["step"] = e.step;
    line["author"] = author_name(e.author);
    line["kind"] = std::string(to_string(e.kind));
    line["payload"] = payload_of(e);
    out += line.dump();
    out += '\n';
  }
  return out;
}

const Event& Bulletin::post(Event e) {
  transcript_->record(e);
  entries_.push_back(std::move(e));
  return entries_.back();
}

std::vector<const Event*> Bulletin::of_kind(EventKind kind) const {
  std::vector<const Event*> out;
  for (const auto& e : entries_)
    if (e.kind == kind) out.push_back(&e);
  return out;
}

const Event* Bulletin::find(EventKind kind, int author, int peer) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->kind == kind && it->author == author && it->peer == peer) return &*it;
  return nullptr;
}

}  // namespace qsum
