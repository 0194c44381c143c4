#pragma once

#include <morfwork/workbench.hpp>

#include <map>
#include <string>

namespace httplib
{
	class Server;
}

namespace morfwork::tools
{
	struct Response
	{
		int status = 200;
		std::string body;
		std::string contentType = "application/json; charset=utf-8";
	};

	/// HTTP/JSON API over immutable loaded state. Pure: no request mutates
	/// anything, so one instance serves concurrent requests.
	class Service
	{
	public:
		/// `session` may be null; corpus endpoints then answer 503.
		Service(const Workbench& workbench, const SearchSession* session, bool asciiFold = false);

		/// Dispatches a GET on `path` with decoded query parameters.
		Response handle(const std::string& path, const std::multimap<std::string, std::string>& params) const;

	private:
		Response features() const;
		Response search(const std::multimap<std::string, std::string>& params) const;
		Response sentence(const std::string& id) const;
		Response analysis(const std::multimap<std::string, std::string>& params) const;
		Response analyze(const std::multimap<std::string, std::string>& params) const;

		const Workbench& wb_;
		const SearchSession* session_;
		bool asciiFold_;
	};

	/// Registers the API routes and the static mount on `server`.
	void mount(httplib::Server& server, const Service& service, const std::filesystem::path& staticDir);

	/// Starts cpp-httplib on host:port, mounting `staticDir` at "/" when it
	/// exists. Blocks until the server stops.
	void serve(const Service& service, const std::string& host, int port, const std::filesystem::path& staticDir);
}
