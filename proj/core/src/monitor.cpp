#include "vsd/monitor.hpp"

#include <httplib.h>
#include <json.hpp>

#include <csignal>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <pthread.h>
#include <sys/wait.h>

#include "vsd/error.hpp"
#include "vsd/pipeline.hpp"

namespace vsd {

using ojson = nlohmann::ordered_json;

std::string to_json(const AlertEvent& e) {
  ojson j;
  j["timestamp"] = e.timestamp;
  j["text"] = e.text;
  j["score"] = e.score;
  j["label"] = std::string(to_string(e.label));
  j["source_id"] = e.source_id;
  j["count"] = e.count;
  return j.dump();
}

std::string rfc3339_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()) % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof(out), "%s.%03dZ", buf, static_cast<int>(ms.count()));
  return out;
}

WebhookSink::WebhookSink(const std::string& url, std::chrono::milliseconds timeout)
    : url_(url), timeout_(timeout) {
  constexpr std::string_view scheme = "http://";
  if (url.rfind(scheme, 0) != 0) {
    throw Error(Errc::InvalidArgument, "webhook URL must start with http:// (got '" + url + "')");
  }
  const auto path_start = url.find('/', scheme.size());
  origin_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (origin_.size() == scheme.size()) throw Error(Errc::InvalidArgument, "webhook URL has no host");
}

bool WebhookSink::deliver(const std::string& json, std::string& error) {
  httplib::Client client(origin_);
  const auto secs = static_cast<time_t>(timeout_.count() / 1000);
  const auto usecs = static_cast<time_t>((timeout_.count() % 1000) * 1000);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  const auto res = client.Post(path_, json, "application/json");
  if (!res) {
    error = "request failed: " + httplib::to_string(res.error());
    return false;
  }
  if (res->status < 200 || res->status >= 300) {
    error = "HTTP status " + std::to_string(res->status);
    return false;
  }
  return true;
}

bool CommandSink::deliver(const std::string& json, std::string& error) {
  std::FILE* pipe = ::popen(command_.c_str(), "w");
  if (!pipe) {
    error = "cannot start command";
    return false;
  }
  const std::string payload = json + "\n";
  const bool wrote = std::fwrite(payload.data(), 1, payload.size(), pipe) == payload.size();
  const int status = ::pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    error = "command exited with status " +
            std::to_string(status != -1 && WIFEXITED(status) ? WEXITSTATUS(status) : -1);
    return false;
  }
  if (!wrote) {
    error = "command did not read the alert";
    return false;
  }
  return true;
}

void MonitorConfig::validate() const {
  if (!webhook_url && !command && !dry_run) {
    throw Error(Errc::InvalidArgument, "monitor needs a webhook URL, a command, or dry-run mode");
  }
  if (!(debounce_seconds >= 0.0)) throw Error(Errc::InvalidArgument, "debounce must be >= 0");
  if (dispatch.max_pending == 0) throw Error(Errc::InvalidArgument, "max_pending must be >= 1");
}

Monitor::Monitor(std::shared_ptr<const TrainedModel> model, MonitorConfig config,
                 std::vector<std::unique_ptr<AlertSink>> sinks, std::ostream& log)
    : model_(std::move(model)), config_(std::move(config)), sinks_(std::move(sinks)), log_(log) {
  config_.validate();
  if (!model_) throw Error(Errc::InvalidArgument, "monitor needs a model");
  worker_ = std::thread([this] { worker(); });
}

Monitor::~Monitor() { finish(); }

void Monitor::log_line(const std::string& json) {
  std::lock_guard lock(log_mutex_);
  log_ << json << '\n';
  log_.flush();
}

void Monitor::process_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.find_first_not_of(" \t") == std::string_view::npos) return;

  const auto result = classify(*model_, line);
  const std::string timestamp = rfc3339_now();
  ojson entry;
  entry["event"] = "classified";
  entry["timestamp"] = timestamp;
  entry["label"] = std::string(to_string(result.label));
  entry["score"] = result.score;
  entry["low_signal"] = result.low_signal;
  entry["text"] = std::string(line);
  log_line(entry.dump());

  std::lock_guard lock(mutex_);
  ++stats_.lines;
  if (result.label != Label::Violent) return;
  ++stats_.detections;

  const auto now = std::chrono::steady_clock::now();
  if (burst_ && now >= burst_->deadline) close_burst_locked();
  if (burst_) {
    auto& e = burst_->event;
    e.text = std::string(line);
    e.score = result.score;
    e.timestamp = timestamp;
    ++e.count;
  } else {
    const auto window = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(config_.debounce_seconds));
    burst_ = Burst{AlertEvent{timestamp, std::string(line), result.score, Label::Violent,
                              config_.source_id, 1},
                   now + window};
  }
  if (config_.debounce_seconds == 0.0) close_burst_locked();
  cv_.notify_all();
}

void Monitor::enqueue_locked(AlertEvent event) {
  ++stats_.alerts_emitted;
  if (queue_.size() >= config_.dispatch.max_pending) {
    ojson warn;
    warn["event"] = "alert_dropped";
    warn["reason"] = "queue full";
    warn["text"] = queue_.front().text;
    queue_.pop_front();
    ++stats_.alerts_dropped;
    log_line(warn.dump());
  }
  queue_.push_back(std::move(event));
}

void Monitor::close_burst_locked() {
  if (!burst_) return;
  enqueue_locked(std::move(burst_->event));
  burst_.reset();
}

void Monitor::deliver(const AlertEvent& event) {
  const std::string json = to_json(event);
  if (sinks_.empty()) {
    ojson entry;
    entry["event"] = "alert";
    entry["dry_run"] = true;
    entry["payload"] = ojson::parse(json);
    log_line(entry.dump());
    std::lock_guard lock(mutex_);
    ++stats_.alerts_delivered;
    return;
  }
  bool all_ok = true;
  for (const auto& sink : sinks_) {
    auto delay = config_.dispatch.backoff;
    bool ok = false;
    std::string error;
    std::size_t attempts = 0;
    for (;;) {
      ++attempts;
      error.clear();
      ok = sink->deliver(json, error);
      if (ok || attempts > config_.dispatch.retries) break;
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    ojson entry;
    entry["event"] = ok ? "alert_sent" : "alert_failed";
    entry["sink"] = sink->describe();
    entry["attempts"] = attempts;
    if (!ok) entry["error"] = error;
    entry["payload"] = ojson::parse(json);
    log_line(entry.dump());
    all_ok = all_ok && ok;
  }
  std::lock_guard lock(mutex_);
  ++(all_ok ? stats_.alerts_delivered : stats_.alerts_failed);
}

void Monitor::worker() {
  // Broken pipes from alert commands surface as write errors, not signals.
  sigset_t block;
  sigemptyset(&block);
  sigaddset(&block, SIGPIPE);
  pthread_sigmask(SIG_BLOCK, &block, nullptr);

  std::unique_lock lock(mutex_);
  for (;;) {
    if (burst_ && (stopping_ || std::chrono::steady_clock::now() >= burst_->deadline)) {
      close_burst_locked();
    }
    if (!queue_.empty()) {
      AlertEvent next = std::move(queue_.front());
      queue_.pop_front();
      lock.unlock();
      deliver(next);
      lock.lock();
      continue;
    }
    if (stopping_) break;
    if (burst_) cv_.wait_until(lock, burst_->deadline);
    else cv_.wait(lock);
  }
}

void Monitor::run(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) process_line(line);
  finish();
}

void Monitor::finish() {
  {
    std::lock_guard lock(mutex_);
    if (finished_) return;
    finished_ = true;
    stopping_ = true;
  }
  cv_.notify_all();
  if (worker_.joinable()) worker_.join();
}

MonitorStats Monitor::stats() const {
  std::lock_guard lock(mutex_);
  return stats_;
}

}  // namespace vsd
