// SPDX-License-Identifier: Apache-2.0
#include "rankweave/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace rankweave {

namespace {

std::string errno_text() { return std::strerror(errno); }

}  // namespace

Endpoint Endpoint::parse(const std::string& text, std::uint16_t default_port) {
  std::string trimmed = text;
  const auto first = trimmed.find_first_not_of(" \t\r\n");
  const auto last = trimmed.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw domain_error("empty endpoint");
  trimmed = trimmed.substr(first, last - first + 1);

  Endpoint ep;
  const auto colon = trimmed.rfind(':');
  if (colon == std::string::npos) {
    ep.host = trimmed;
    ep.port = default_port;
  } else {
    ep.host = trimmed.substr(0, colon);
    const std::string port_text = trimmed.substr(colon + 1);
    if (port_text.empty() || port_text.find_first_not_of("0123456789") != std::string::npos)
      throw domain_error("invalid port in endpoint '" + trimmed + "'");
    const long port = std::stol(port_text);
    if (port < 1 || port > 65535) throw domain_error("port out of range in endpoint '" + trimmed + "'");
    ep.port = static_cast<std::uint16_t>(port);
  }
  if (ep.host.empty()) throw domain_error("endpoint '" + trimmed + "' has no host");
  return ep;
}

std::string Endpoint::str() const { return host + ":" + std::to_string(port); }

sockaddr_in resolve_ipv4(const Endpoint& ep) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_DGRAM;
  addrinfo* result = nullptr;
  const int rc = ::getaddrinfo(ep.host.c_str(), nullptr, &hints, &result);
  if (rc != 0 || result == nullptr)
    throw net_error("cannot resolve host '" + ep.host + "': " + gai_strerror(rc));
  sockaddr_in addr{};
  std::memcpy(&addr, result->ai_addr, sizeof(addr));
  addr.sin_port = htons(ep.port);
  ::freeaddrinfo(result);
  return addr;
}

UdpSocket::UdpSocket() {
  fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) throw net_error("socket(): " + errno_text());
}

UdpSocket::~UdpSocket() { close(); }

UdpSocket::UdpSocket(UdpSocket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

UdpSocket& UdpSocket::operator=(UdpSocket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

void UdpSocket::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void UdpSocket::bind(const Endpoint& ep) {
  const sockaddr_in addr = resolve_ipv4(ep);
  if (::bind(fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0)
    throw net_error("bind(" + ep.str() + "): " + errno_text());
}

void UdpSocket::set_recv_timeout(std::chrono::microseconds timeout) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(timeout.count() / 1'000'000);
  tv.tv_usec = static_cast<suseconds_t>(timeout.count() % 1'000'000);
  if (::setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv)) != 0)
    throw net_error("setsockopt(SO_RCVTIMEO): " + errno_text());
}

std::uint16_t UdpSocket::local_port() const {
  sockaddr_in addr{};
  socklen_t len = sizeof(addr);
  if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len) != 0)
    throw net_error("getsockname(): " + errno_text());
  return ntohs(addr.sin_port);
}

void UdpSocket::send_to(const void* data, std::size_t len, const sockaddr_in& to) {
  const ssize_t sent =
      ::sendto(fd_, data, len, 0, reinterpret_cast<const sockaddr*>(&to), sizeof(to));
  if (sent < 0 || static_cast<std::size_t>(sent) != len)
    throw net_error("sendto(): " + errno_text());
}

std::optional<std::pair<std::size_t, sockaddr_in>> UdpSocket::recv_from(void* buf, std::size_t cap) {
  sockaddr_in from{};
  socklen_t from_len = sizeof(from);
  const ssize_t got = ::recvfrom(fd_, buf, cap, 0, reinterpret_cast<sockaddr*>(&from), &from_len);
  if (got < 0) {
    if (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR) return std::nullopt;
    throw net_error("recvfrom(): " + errno_text());
  }
  return std::make_pair(static_cast<std::size_t>(got), from);
}

}  // namespace rankweave
