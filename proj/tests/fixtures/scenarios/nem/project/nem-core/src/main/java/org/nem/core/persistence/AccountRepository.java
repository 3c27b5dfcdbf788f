package org.nem.core.persistence;

import org.hibernate.Query;
import org.hibernate.Session;

public class AccountRepository {
	private final Session session;

	public AccountRepository(final Session session) {
		this.session = session;
	}

	public Object findByAddress(final String address) {
		final Query query = this.session.createQuery("from DbAccount a where a.address = :address");
		return query.setParameter("address", address).uniqueResult();
	}
}
