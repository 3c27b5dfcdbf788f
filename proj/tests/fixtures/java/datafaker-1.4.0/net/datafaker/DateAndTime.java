package net.datafaker;

import java.sql.Timestamp;
import java.util.Date;
import java.util.concurrent.TimeUnit;

public class DateAndTime {
    public DateAndTime() {
    }

    public Timestamp between(Timestamp from, Timestamp to) {
        return from;
    }

    public Date past(int atMost, TimeUnit unit) {
        return new Date(0L);
    }

    public Date future(int atMost, TimeUnit unit) {
        return new Date(0L);
    }

    public Date birthday() {
        return new Date(0L);
    }
}
