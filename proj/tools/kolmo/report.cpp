#include "report.hpp"

#include <sstream>

namespace kolmo::cli {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::flagged: return "flagged";
  }
  return "?";
}

void Report::merge(Report other) {
  for (auto& i : other.items) items.push_back(std::move(i));
  for (auto& n : other.notes) notes.push_back(std::move(n));
  for (auto& [k, v] : other.extra.items()) extra[k] = v;
}

std::size_t Report::count(Verdict v) const {
  std::size_t n = 0;
  for (auto& i : items) n += i.verdict == v;
  return n;
}

json Report::to_json() const {
  json j;
  j["command"] = command;
  j["catalog_version"] = catalog_version;
  j["seed"] = seed;
  json arr = json::array();
  for (auto& i : items) {
    json e;
    e["id"] = i.id;
    e["verdict"] = verdict_name(i.verdict);
    for (auto& [k, v] : i.details.items()) e[k] = v;
    arr.push_back(std::move(e));
  }
  j["items"] = std::move(arr);
  if (!extra.empty()) j["results"] = extra;
  j["summary"] = {{"total", items.size()},
                  {"pass", count(Verdict::pass)},
                  {"fail", count(Verdict::fail)},
                  {"flagged", count(Verdict::flagged)}};
  json notes_j = json::array();
  for (auto& n : notes) {
    json e = {{"id", n.id}, {"issue", n.issue}};
    for (auto& [k, v] : n.evidence.items()) e[k] = v;
    notes_j.push_back(std::move(e));
  }
  j["compatibility_notes"] = std::move(notes_j);
  return j;
}

std::string Report::summary_text() const {
  std::ostringstream os;
  os << command << "\n";
  for (auto& i : items) {
    if (i.verdict != Verdict::pass) os << "  " << verdict_name(i.verdict) << "  " << i.id << "\n";
  }
  os << items.size() << " items: " << count(Verdict::pass) << " pass, " << count(Verdict::fail) << " fail, "
     << count(Verdict::flagged) << " flagged";
  if (!notes.empty()) os << "; " << notes.size() << " compatibility notes";
  os << "\n";
  return os.str();
}

std::uint64_t item_seed(std::uint64_t seed, const std::string& id) {
  // FNV-1a over the id, mixed with the run seed
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h ^= seed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace kolmo::cli
