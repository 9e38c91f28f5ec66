#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "vsd/corpus.hpp"
#include "vsd/model_io.hpp"

namespace vsd {

struct AlertEvent {
  std::string timestamp;  // RFC 3339, UTC
  std::string text;
  double score = 0.0;
  Label label = Label::Violent;
  std::string source_id;
  std::size_t count = 1;  // detections collapsed into this alert
};

// {"timestamp","text","score","label","source_id","count"}
std::string to_json(const AlertEvent& event);
std::string rfc3339_now();

// Destination for serialized alerts. deliver() returns true on success and
// must not throw.
class AlertSink {
 public:
  virtual ~AlertSink() = default;
  virtual bool deliver(const std::string& json, std::string& error) = 0;
  virtual std::string describe() const = 0;
};

// HTTP POST with content-type application/json; any 2xx is success.
class WebhookSink : public AlertSink {
 public:
  // Accepts http://host[:port][/path]. Throws InvalidArgument otherwise.
  explicit WebhookSink(const std::string& url,
                       std::chrono::milliseconds timeout = std::chrono::seconds(5));
  bool deliver(const std::string& json, std::string& error) override;
  std::string describe() const override { return url_; }

 private:
  std::string url_;
  std::string origin_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

// Runs `command` through the shell with the alert JSON on its standard
// input; exit status 0 is success.
class CommandSink : public AlertSink {
 public:
  explicit CommandSink(std::string command) : command_(std::move(command)) {}
  bool deliver(const std::string& json, std::string& error) override;
  std::string describe() const override { return command_; }

 private:
  std::string command_;
};

struct DispatchPolicy {
  std::size_t retries = 3;  // after the first attempt
  std::chrono::milliseconds backoff{1000};  // doubles after each failure
  std::size_t max_pending = 1000;  // oldest alert is dropped beyond this
};

struct MonitorConfig {
  std::optional<std::string> webhook_url;
  std::optional<std::string> command;
  double debounce_seconds = 30.0;
  bool dry_run = false;
  std::string source_id = "vsd-monitor";
  DispatchPolicy dispatch;

  // At least one of webhook_url / command, or dry_run.
  void validate() const;
};

struct MonitorStats {
  std::size_t lines = 0;
  std::size_t detections = 0;
  std::size_t alerts_emitted = 0;    // after debouncing
  std::size_t alerts_delivered = 0;
  std::size_t alerts_failed = 0;     // gave up after retries
  std::size_t alerts_dropped = 0;    // queue overflow
};

// Classifies utterances one line at a time and raises alerts for Violent
// lines. Detections within `debounce_seconds` of the first detection of a
// burst collapse into one alert carrying the latest text and the burst count;
// the alert goes out when the window closes or at finish(). Delivery runs on
// a background thread in detection order, so retries never stall
// classification. Every processed line and every delivery outcome is written
// to `log` as one JSON object per line.
class Monitor {
 public:
  Monitor(std::shared_ptr<const TrainedModel> model, MonitorConfig config,
          std::vector<std::unique_ptr<AlertSink>> sinks, std::ostream& log);
  ~Monitor();

  Monitor(const Monitor&) = delete;
  Monitor& operator=(const Monitor&) = delete;

  void process_line(std::string_view line);
  // Reads until EOF, then finish().
  void run(std::istream& in);
  // Flushes the open burst, delivers everything queued, and stops the worker.
  void finish();

  MonitorStats stats() const;

 private:
  struct Burst {
    AlertEvent event;
    std::chrono::steady_clock::time_point deadline;
  };

  void worker();
  void enqueue_locked(AlertEvent event);
  void close_burst_locked();
  void deliver(const AlertEvent& event);
  void log_line(const std::string& json);

  std::shared_ptr<const TrainedModel> model_;
  MonitorConfig config_;
  std::vector<std::unique_ptr<AlertSink>> sinks_;
  std::ostream& log_;
  std::mutex log_mutex_;

  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::optional<Burst> burst_;
  std::deque<AlertEvent> queue_;
  bool stopping_ = false;
  bool finished_ = false;
  MonitorStats stats_;
  std::thread worker_;
};

}  // namespace vsd
