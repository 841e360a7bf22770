/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "orbitcap/session.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace orbitcap
{

/// Append-only directory of session reports. Safe for concurrent writers.
class ReportStore
{
public:
  explicit ReportStore(std::filesystem::path dir);

  /// Writes `session-<n>.json` and returns its path.
  std::filesystem::path persist(const SessionReport& report);

  std::vector<std::filesystem::path> written() const;

private:
  std::filesystem::path m_dir;
  mutable std::mutex m_mutex;
  std::uint64_t m_next{1};
  std::vector<std::filesystem::path> m_written;
};

struct ServerOptions
{
  std::string address{"127.0.0.1"};
  std::uint16_t port{8765}; // 0 picks a free port
  SessionConfig defaults;
  std::filesystem::path report_dir{"reports"};
  int threads{2};
};

class BindError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/**
 * WebSocket endpoint, one session per connection. Every session's report is
 * persisted exactly once: on finalize, on disconnect, or on stop().
 */
class Server
{
public:
  explicit Server(ServerOptions options);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and starts the worker threads. Throws BindError.
  void start();

  std::uint16_t port() const;

  /// Stops accepting, closes live sessions (persisting their reports) and
  /// joins the workers. Idempotent.
  void stop();

  ReportStore& reports();

private:
  struct Impl;
  std::unique_ptr<Impl> m_impl;
};

} // namespace orbitcap
