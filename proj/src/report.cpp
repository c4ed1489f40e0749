#include "bsset/report.hpp"

#include <cstdio>
#include <ctime>
#include <sstream>

#include "bsset/errors.hpp"

namespace bsset {

std::string fnv1a_digest(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunReport::RunReport(std::string command) : command_(std::move(command)) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  started_ = buf;
}

void RunReport::add_input(const std::string& label, std::string_view contents) {
  inputs_.push_back(Json{{"name", label}, {"bytes", contents.size()}, {"fnv1a", fnv1a_digest(contents)}});
}

RunReport::Json& RunReport::section(const std::string& name) {
  if (!sections_.contains(name)) sections_[name] = Json::object();
  return sections_[name];
}

void RunReport::verdict(const std::string& name, const std::string& status, const std::string& reason) {
  if (status != "pass" && status != "fail" && status != "skipped") throw InternalError("bad verdict status " + status);
  verdicts_.push_back(Json{{"name", name}, {"status", status}, {"reason", reason}});
}

void RunReport::timing(const std::string& step, double milliseconds) { timings_.emplace_back(step, milliseconds); }

bool RunReport::any_failed() const {
  for (const auto& v : verdicts_)
    if (v["status"] == "fail") return true;
  return false;
}

std::string RunReport::header() const {
  std::ostringstream out;
  out << "started " << started_ << "; timings";
  if (timings_.empty()) out << " none";
  for (const auto& [step, ms] : timings_) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", ms);
    out << ' ' << step << '=' << buf << "ms";
  }
  return out.str();
}

namespace {

std::string scalar(const RunReport::Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render(std::ostream& out, const RunReport::Json& v, const std::string& prefix) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) render(out, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    return;
  }
  if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t i = 0; i < v.size(); ++i) render(out, v[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  out << prefix << ": ";
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << scalar(v[i]);
  } else {
    out << scalar(v);
  }
  out << "\n";
}

}  // namespace

std::string RunReport::text() const {
  std::ostringstream out;
  out << "# " << header() << "\n";
  out << "command: " << command_ << "\n";
  for (const auto& in : inputs_)
    out << "input: " << in["name"].get<std::string>() << " bytes=" << in["bytes"].dump() << " fnv1a=" << in["fnv1a"].get<std::string>() << "\n";
  render(out, sections_, "");
  for (const auto& v : verdicts_) {
    out << "verdict " << v["name"].get<std::string>() << ": " << v["status"].get<std::string>();
    const auto reason = v["reason"].get<std::string>();
    if (!reason.empty()) out << " (" << reason << ")";
    out << "\n";
  }
  out << "result: " << (any_failed() ? "fail" : "pass") << "\n";
  return out.str();
}

std::string RunReport::json() const {
  Json body = Json::object();
  body["command"] = command_;
  body["inputs"] = inputs_;
  for (auto it = sections_.begin(); it != sections_.end(); ++it) body[it.key()] = it.value();
  body["verdicts"] = verdicts_;
  body["result"] = any_failed() ? "fail" : "pass";
  std::string rest = body.dump(2);  // "{\n  ...\n}"
  return "{\"header\": " + Json(header()).dump() + ",\n" + rest.substr(2);
}

StepTimer::StepTimer(RunReport& report, std::string step)
    : report_(report), step_(std::move(step)), start_(std::chrono::steady_clock::now()) {}

StepTimer::~StepTimer() {
  const auto elapsed = std::chrono::steady_clock::now() - start_;
  report_.timing(step_, std::chrono::duration<double, std::milli>(elapsed).count());
}

}  // namespace bsset
