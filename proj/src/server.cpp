/*
 *  Copyright (C) 2026 The orbitcap Authors
 *
 *  SPDX-License-Identifier: Apache-2.0
 */

#include "orbitcap/server.hpp"

#include "orbitcap/protocol.hpp"
#include "orbitcap/report_json.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <fstream>
#include <thread>

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

namespace orbitcap
{

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

ReportStore::ReportStore(std::filesystem::path dir) : m_dir(std::move(dir)) {}

std::filesystem::path ReportStore::persist(const SessionReport& report)
{
  const std::string text = dump_report(report);

  std::lock_guard lock(m_mutex);
  std::filesystem::create_directories(m_dir);

  char name[32];
  std::snprintf(name, sizeof(name), "session-%06llu.json", static_cast<unsigned long long>(m_next++));
  const std::filesystem::path path = m_dir / name;

  std::ofstream out(path, std::ios::binary);
  out << text;
  m_written.push_back(path);
  return path;
}

std::vector<std::filesystem::path> ReportStore::written() const
{
  std::lock_guard lock(m_mutex);
  return m_written;
}

namespace
{

class WsSession : public std::enable_shared_from_this<WsSession>
{
public:
  WsSession(tcp::socket&& socket, const SessionConfig& defaults, ReportStore& store)
    : m_ws(std::move(socket)), m_protocol(defaults), m_store(store)
  {
  }

  void run()
  {
    net::dispatch(m_ws.get_executor(), beast::bind_front_handler(&WsSession::on_run, shared_from_this()));
  }

  // Persist, then drop the connection. Pending handlers finish with errors.
  void shutdown()
  {
    net::dispatch(m_ws.get_executor(), [self = shared_from_this()] {
      self->persist();
      beast::error_code ec;
      beast::get_lowest_layer(self->m_ws).socket().close(ec);
    });
  }

private:
  void on_run()
  {
    m_ws.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    m_ws.async_accept(beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
  }

  void on_accept(beast::error_code ec)
  {
    if (ec)
      return;
    do_read();
  }

  void do_read()
  {
    m_ws.async_read(m_buffer, beast::bind_front_handler(&WsSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t)
  {
    if (ec)
    {
      persist();
      return;
    }

    ProtocolSession::Output out = m_protocol.handle(beast::buffers_to_string(m_buffer.data()));
    m_buffer.consume(m_buffer.size());

    for (std::string& reply : out.replies)
      m_outbox.push_back(std::move(reply));
    if (out.close)
    {
      m_closing = true;
      persist();
    }
    if (!m_writing)
      do_write();
    if (!out.close)
      do_read();
  }

  void do_write()
  {
    if (m_outbox.empty())
    {
      m_writing = false;
      if (m_closing)
        m_ws.async_close(websocket::close_code::normal, [self = shared_from_this()](beast::error_code) {});
      return;
    }
    m_writing = true;
    m_ws.text(true);
    m_ws.async_write(net::buffer(m_outbox.front()), beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t)
  {
    if (ec)
    {
      persist();
      return;
    }
    m_outbox.pop_front();
    do_write();
  }

  void persist()
  {
    if (m_persisted)
      return;
    const auto report = m_protocol.report();
    if (!report)
      return;
    m_persisted = true;
    m_store.persist(*report);
  }

  websocket::stream<beast::tcp_stream> m_ws;
  beast::flat_buffer m_buffer;
  ProtocolSession m_protocol;
  ReportStore& m_store;
  std::deque<std::string> m_outbox;
  bool m_writing{false};
  bool m_closing{false};
  bool m_persisted{false};
};

} // namespace

struct Server::Impl
{
  explicit Impl(ServerOptions opts)
    : options(std::move(opts)), store(options.report_dir), acceptor(net::make_strand(ioc))
  {
  }

  void do_accept()
  {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (ec || stopping)
        return;

      std::erase_if(sessions, [](const std::weak_ptr<WsSession>& s) { return s.expired(); });
      auto session = std::make_shared<WsSession>(std::move(socket), options.defaults, store);
      sessions.push_back(session);
      session->run();
      do_accept();
    });
  }

  ServerOptions options;
  ReportStore store;
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::vector<std::thread> workers;
  std::uint16_t bound_port{0};
  bool running{false};

  // Touched only on the acceptor's strand.
  bool stopping{false};
  std::vector<std::weak_ptr<WsSession>> sessions;
};

Server::Server(ServerOptions options) : m_impl(std::make_unique<Impl>(std::move(options)))
{
  m_impl->options.defaults.validate();
}

Server::~Server()
{
  stop();
}

void Server::start()
{
  Impl& impl = *m_impl;
  if (impl.running)
    return;

  beast::error_code ec;
  const auto address = net::ip::make_address(impl.options.address, ec);
  if (ec)
    throw BindError("invalid bind address '" + impl.options.address + "': " + ec.message());

  const tcp::endpoint endpoint{address, impl.options.port};
  impl.acceptor.open(endpoint.protocol(), ec);
  if (!ec)
    impl.acceptor.set_option(net::socket_base::reuse_address(true), ec);
  if (!ec)
    impl.acceptor.bind(endpoint, ec);
  if (!ec)
    impl.acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec)
  {
    beast::error_code ignored;
    impl.acceptor.close(ignored);
    throw BindError("cannot listen on " + impl.options.address + ":" + std::to_string(impl.options.port) + ": " +
                    ec.message());
  }
  impl.bound_port = impl.acceptor.local_endpoint().port();

  impl.do_accept();
  impl.running = true;
  const int threads = std::max(1, impl.options.threads);
  for (int i = 0; i < threads; ++i)
    impl.workers.emplace_back([&impl] { impl.ioc.run(); });
}

std::uint16_t Server::port() const
{
  return m_impl->bound_port;
}

void Server::stop()
{
  Impl& impl = *m_impl;
  if (!impl.running)
    return;
  impl.running = false;

  net::post(impl.acceptor.get_executor(), [&impl] {
    impl.stopping = true;
    beast::error_code ec;
    impl.acceptor.close(ec);
    for (const auto& weak : impl.sessions)
    {
      if (auto session = weak.lock())
        session->shutdown();
    }
    impl.sessions.clear();
  });

  for (std::thread& worker : impl.workers)
    worker.join();
  impl.workers.clear();
}

ReportStore& Server::reports()
{
  return m_impl->store;
}

} // namespace orbitcap
